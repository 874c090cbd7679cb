use super::*;
use crate::syntax::{format_word, parse_word};

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

fn w(al: &Alphabet, s: &str) -> Word {
    parse_word(al, s).unwrap()
}

fn fold(al: &Alphabet, gens: &[&str]) -> SubgroupGraph {
    let words: Vec<Word> = gens.iter().map(|s| w(al, s)).collect();
    SubgroupGraph::fold(al, &words)
}

/// Substitutes generator words for the symbols of an expression.
fn substitute(expr: &Word, gens: &[Word]) -> Word {
    let mut out = Word::identity();
    for l in expr.letters() {
        let g = &gens[l.gen()];
        out.append(&if l.is_inverse() { g.inverse() } else { g.clone() });
    }
    out
}

#[test]
fn folding_ab_abb_gives_whole_group() {
    let al = ab();
    let g = fold(&al, &["ab", "abb"]);
    assert_eq!(g.vertex_count(), 1);
    assert_eq!(g.edges().len(), 2);
    assert_eq!(g, SubgroupGraph::whole(&al));
    assert!(g.member(&w(&al, "a")));
    assert!(g.member(&w(&al, "b")));
}

#[test]
fn empty_generators_give_trivial_graph() {
    let g = fold(&ab(), &[]);
    assert_eq!(g.rank(), 0);
    assert_eq!(g.vertex_count(), 1);
    assert!(g.is_trivial());
    assert!(g.member(&Word::identity()));
}

#[test]
fn a_squared_and_b() {
    let al = ab();
    let g = fold(&al, &["aa", "b"]);
    assert_eq!(g.vertex_count(), 2);
    assert_eq!(g.edges().len(), 3);
    assert_eq!(g.rank(), 2);
    assert!(g.member(&w(&al, "aab")));
    assert!(!g.member(&w(&al, "a")));
    assert!(!g.member(&w(&al, "ab")));
}

#[test]
fn membership_examples() {
    let al = ab();
    assert!(!fold(&al, &["aa", "bb"]).member(&w(&al, "ab")));
    assert!(fold(&al, &["ab", "abb"]).member(&w(&al, "a")));
}

#[test]
fn express_examples() {
    let al = ab();
    let g = fold(&al, &["ab", "abb"]);
    let e = g.express(&w(&al, "b")).unwrap();
    assert_eq!(e, Word::reduce([Letter::neg(0), Letter::pos(1)]));
    assert_eq!(substitute(&e, g.generators()), w(&al, "b"));
    assert!(g.express(&Word::identity()).unwrap().is_identity());

    let g = fold(&al, &["aa", "b"]);
    let e = g.express(&w(&al, "aab")).unwrap();
    assert_eq!(e, Word::reduce([Letter::pos(0), Letter::pos(1)]));

    assert_eq!(
        fold(&al, &["aa", "b"]).express(&w(&al, "a")),
        Err(Error::NotAMember)
    );
}

#[test]
fn express_certificates_after_heavy_folding() {
    let al = ab();
    let gens = ["abAB", "aabA", "bbb", "BaB"];
    let g = fold(&al, &gens);
    let words: Vec<Word> = gens.iter().map(|s| w(&al, s)).collect();
    for x in Word::ball(2, 6) {
        if g.member(&x) {
            assert_eq!(substitute(&g.express(&x).unwrap(), &words), x);
        }
    }
}

#[test]
fn rank_examples() {
    let al = ab();
    assert_eq!(fold(&al, &["aa", "bb", "ab"]).rank(), 3);
    assert_eq!(SubgroupGraph::trivial(&al).rank(), 0);
    assert_eq!(fold(&al, &["aa", "b"]).rank(), 2);
}

#[test]
fn basis_regenerates_graph() {
    let al = ab();
    for gens in [&["aa", "bb", "ab"][..], &["abAB", "bab"], &["aaa", "bAbb"]] {
        let g = fold(&al, gens);
        let again = SubgroupGraph::fold(&al, &g.basis().words);
        assert_eq!(again, g);
        assert_eq!(g.basis().words.len(), g.rank());
    }
}

#[test]
fn intersection_examples() {
    let al = ab();
    let meet = fold(&al, &["aa", "b"]).intersect(&fold(&al, &["a", "bb"])).unwrap();
    assert_eq!(meet.rank(), 2);
    assert_eq!(meet, fold(&al, &["aa", "bb"]));
    assert_eq!(meet.vertex_count(), 3);
    assert_eq!(meet.edges().len(), 4);
    assert!(meet.member(&w(&al, "aa")));
    assert!(meet.member(&w(&al, "bb")));
    assert!(!meet.member(&w(&al, "ab")));

    let g = fold(&al, &["abA", "bb"]);
    assert_eq!(g.intersect(&g).unwrap(), g);

    assert!(fold(&al, &["ab"])
        .intersect(&fold(&al, &["aa", "bb"]))
        .unwrap()
        .is_trivial());
}

#[test]
fn inclusion_and_equality() {
    let al = ab();
    assert!(fold(&al, &["a", "b"]).same_subgroup(&fold(&al, &["ab", "abb"])).unwrap());
    let g = fold(&al, &["aab"]);
    assert!(g.includes(&SubgroupGraph::trivial(&al)).unwrap());
    assert!(!fold(&al, &["aa", "bb"]).includes(&fold(&al, &["a", "b"])).unwrap());
    let other = Alphabet::new(["a", "b", "c"]).unwrap();
    assert!(matches!(
        g.includes(&SubgroupGraph::trivial(&other)),
        Err(Error::AlphabetMismatch(_))
    ));
}

#[test]
fn preimage_examples() {
    let xy = Alphabet::new(["x", "y"]).unwrap();
    let al = ab();
    let g = Homomorphism::new(xy.clone(), al.clone(), vec![w(&al, "aa"), w(&al, "b")]).unwrap();
    let pre = fold(&al, &["aa", "bb"]).preimage(&g).unwrap();
    assert_eq!(pre, fold(&xy, &["x", "yy"]));
    assert_eq!(g.image().preimage(&g).unwrap(), SubgroupGraph::whole(&xy));

    let abc = Alphabet::new(["a", "b", "c"]).unwrap();
    let g = Homomorphism::new(xy.clone(), abc.clone(), vec![w(&abc, "a"), w(&abc, "b")]).unwrap();
    assert_eq!(fold(&abc, &["a"]).preimage(&g).unwrap(), fold(&xy, &["x"]));

    let k = Homomorphism::new(xy.clone(), al.clone(), vec![w(&al, "ab"), Word::identity()]).unwrap();
    assert!(matches!(
        fold(&al, &["a"]).preimage(&k),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn dot_output() {
    let al = ab();
    let t = SubgroupGraph::trivial(&al).to_dot();
    assert_eq!(t.matches("->").count(), 0);
    assert!(t.contains("0 [shape=doublecircle]"));
    let g = fold(&al, &["aa", "b"]);
    let d = g.to_dot();
    assert_eq!(d.matches("->").count(), 3);
    assert!(d.contains("label=\"a\""));
    assert_eq!(d, fold(&al, &["b", "aa"]).to_dot());
}

#[test]
fn canonical_form_ignores_generator_order() {
    let al = ab();
    let g1 = fold(&al, &["abA", "bbaB", "aaa"]);
    let g2 = fold(&al, &["aaa", "abA", "bbaB"]);
    assert_eq!(g1, g2);
    assert_eq!(g1.edges(), g2.edges());
    let b1: Vec<String> = g1.basis().words.iter().map(|x| format_word(&al, x)).collect();
    let b2: Vec<String> = g2.basis().words.iter().map(|x| format_word(&al, x)).collect();
    assert_eq!(b1, b2);
}
