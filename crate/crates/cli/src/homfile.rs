//! Homomorphism documents.
//!
//! ```text
//! # comments run to the end of the line
//! domain: x y          # optional; otherwise the assigned generators, in order
//! codomain: a b c      # optional; otherwise inferred from the images
//! x -> ab
//! y -> 1
//! ```
//!
//! `alphabet:` declares domain and codomain at once, for endomorphisms.
//! Images use the word syntax of the codomain. When the codomain is not
//! declared it is inferred: images made only of letters are read in the
//! compact style (codomain = the lowercase letters used, sorted), anything
//! else in the extended style (codomain = the token names, in order of
//! first appearance). Documents loaded together share one inferred codomain.

use freegroup::syntax::parse_word_at;
use freegroup::{format_word, Alphabet, Error, Homomorphism, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Assignment {
    symbol: String,
    image: String,
    line: usize,
    /// 1-based column of the first byte of `image`.
    column: usize,
}

/// A parsed document whose alphabets may still be undetermined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomFile {
    domain: Option<Vec<String>>,
    codomain: Option<Vec<String>>,
    assignments: Vec<Assignment>,
}

fn malformed(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Malformed {
        line,
        column,
        message: message.into(),
    }
}

fn symbols(list: &str) -> Vec<String> {
    list.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

impl HomFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut file = HomFile {
            domain: None,
            codomain: None,
            assignments: Vec::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            if let (false, Some((key, rest))) = (content.contains("->"), content.split_once(':')) {
                let key = key.trim();
                let list = symbols(rest);
                let slot = match key {
                    "domain" => vec![&mut file.domain],
                    "codomain" => vec![&mut file.codomain],
                    "alphabet" => vec![&mut file.domain, &mut file.codomain],
                    _ => {
                        let column = raw.find(key).unwrap_or(0) + 1;
                        return Err(malformed(line, column, format!("unknown header `{key}`")));
                    }
                };
                for s in slot {
                    if s.is_some() {
                        return Err(malformed(line, 1, format!("`{key}` declared twice")));
                    }
                    Alphabet::new(list.clone())
                        .map_err(|e| malformed(line, 1, e.to_string()))?;
                    *s = Some(list.clone());
                }
                continue;
            }
            let Some((lhs, rhs)) = content.split_once("->") else {
                let column = raw.len() - raw.trim_start().len() + 1;
                return Err(malformed(line, column, "expected `generator -> word`"));
            };
            let symbol = lhs.trim();
            if symbol.is_empty() || symbol.contains(char::is_whitespace) {
                return Err(malformed(line, 1, "expected a single generator before `->`"));
            }
            let image_start = lhs.len() + 2;
            let lead = rhs.len() - rhs.trim_start().len();
            file.assignments.push(Assignment {
                symbol: symbol.to_string(),
                image: rhs.trim().to_string(),
                line,
                column: image_start + lead + 1,
            });
        }
        file.check_domain()?;
        Ok(file)
    }

    fn check_domain(&self) -> Result<()> {
        let mut seen: Vec<&str> = Vec::new();
        for a in &self.assignments {
            if seen.contains(&a.symbol.as_str()) {
                return Err(malformed(a.line, 1, format!("`{}` is assigned twice", a.symbol)));
            }
            if let Some(d) = &self.domain {
                if !d.contains(&a.symbol) {
                    return Err(malformed(a.line, 1, format!("`{}` is not in the domain", a.symbol)));
                }
            }
            seen.push(&a.symbol);
        }
        if let Some(d) = &self.domain {
            if let Some(missing) = d.iter().find(|s| !seen.contains(&s.as_str())) {
                return Err(malformed(1, 1, format!("domain generator `{missing}` is not assigned")));
            }
        } else if self.assignments.is_empty() {
            return Err(malformed(1, 1, "no assignments"));
        }
        Ok(())
    }

    /// Domain symbols: declared, or the assigned generators in order.
    pub fn domain_symbols(&self) -> Vec<String> {
        match &self.domain {
            Some(d) => d.clone(),
            None => self.assignments.iter().map(|a| a.symbol.clone()).collect(),
        }
    }

    pub fn declared_codomain(&self) -> Option<&[String]> {
        self.codomain.as_deref()
    }

    /// Builds the map over the given alphabets.
    pub fn build(&self, domain: &Alphabet, codomain: &Alphabet) -> Result<Homomorphism> {
        let mut images = Vec::with_capacity(domain.len());
        for s in domain.symbols() {
            let a = self
                .assignments
                .iter()
                .find(|a| &a.symbol == s)
                .ok_or_else(|| Error::AlphabetMismatch(format!("generator `{s}` is not assigned")))?;
            images.push(parse_word_at(codomain, &a.image, a.line, a.column)?);
        }
        if self.assignments.len() != domain.len() {
            let extra = self
                .assignments
                .iter()
                .find(|a| domain.index_of(&a.symbol).is_none())
                .expect("an assignment outside the domain");
            return Err(malformed(extra.line, 1, format!("`{}` is not in the domain", extra.symbol)));
        }
        Homomorphism::new(domain.clone(), codomain.clone(), images)
    }
}

/// The codomain shared by several documents: the declared one if any
/// document declares it, otherwise the union of the inferred symbols.
pub fn shared_codomain(files: &[HomFile]) -> Result<Alphabet> {
    let declared: Vec<&[String]> = files.iter().filter_map(HomFile::declared_codomain).collect();
    if let Some(first) = declared.first() {
        if declared.iter().any(|d| d != first) {
            return Err(Error::AlphabetMismatch("documents declare different codomains".into()));
        }
        return Alphabet::new(first.iter().cloned());
    }
    let texts: Vec<&str> = files
        .iter()
        .flat_map(|f| f.assignments.iter().map(|a| a.image.as_str()))
        .collect();
    Alphabet::new(infer_symbols(&texts))
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Generator names used by `texts`. When every name is a single lowercase
/// letter the words are read in the compact style and the letters are
/// returned sorted; otherwise the extended-style token names are returned
/// in order of first appearance. Malformed tokens are skipped so that
/// parsing reports them with their position.
pub fn infer_symbols(texts: &[&str]) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for t in texts {
        for token in t.split(|c: char| c.is_whitespace() || c == '*') {
            let name = token.split('^').next().unwrap_or("");
            if is_identifier(name) && !names.iter().any(|n| n == name) {
                names.push(name.to_string());
            }
        }
    }
    let compact = names
        .iter()
        .all(|n| n.chars().all(|c| c.is_ascii_alphabetic()))
        && texts.iter().all(|t| !t.contains('^'))
        || names.iter().all(|n| n.len() == 1 && n.as_bytes()[0].is_ascii_lowercase());
    if !compact {
        return names;
    }
    let mut letters: Vec<String> = Vec::new();
    for t in texts {
        for c in t.chars().filter(char::is_ascii_alphabetic) {
            let s = c.to_ascii_lowercase().to_string();
            if !letters.contains(&s) {
                letters.push(s);
            }
        }
    }
    letters.sort();
    letters
}


/// Loads documents that share domain and codomain.
pub fn load_family(texts: &[&str]) -> Result<Vec<Homomorphism>> {
    let files = texts.iter().map(|t| HomFile::parse(t)).collect::<Result<Vec<_>>>()?;
    let codomain = shared_codomain(&files)?;
    let domain = Alphabet::new(files[0].domain_symbols())?;
    let mut maps = Vec::with_capacity(files.len());
    for f in &files {
        let mut mine = f.domain_symbols();
        let mut theirs = domain.symbols().to_vec();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return Err(Error::AlphabetMismatch("maps have different domains".into()));
        }
        maps.push(f.build(&domain, &codomain)?);
    }
    Ok(maps)
}

/// Parses a single document.
pub fn parse_hom(text: &str) -> Result<Homomorphism> {
    Ok(load_family(&[text])?.remove(0))
}

/// Parses an endomorphism of `alphabet`, as used for retractions.
pub fn parse_endomorphism(text: &str, alphabet: &Alphabet) -> Result<Homomorphism> {
    let f = HomFile::parse(text)?;
    if let Some(c) = f.declared_codomain() {
        if c != alphabet.symbols() {
            return Err(Error::AlphabetMismatch("retraction codomain differs from the maps' codomain".into()));
        }
    }
    let mut mine = f.domain_symbols();
    let mut theirs = alphabet.symbols().to_vec();
    mine.sort();
    theirs.sort();
    if mine != theirs {
        return Err(Error::AlphabetMismatch("retraction domain differs from the maps' codomain".into()));
    }
    f.build(alphabet, alphabet)
}

/// Prints `h` with explicit headers, so that parsing the output gives `h`
/// back exactly.
pub fn print_hom(h: &Homomorphism) -> String {
    let mut out = format!(
        "domain: {}\ncodomain: {}\n",
        h.domain().symbols().join(" "),
        h.codomain().symbols().join(" ")
    );
    for (s, w) in h.domain().symbols().iter().zip(h.images()) {
        out.push_str(&format!("{s} -> {}\n", format_word(h.codomain(), w)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infers_alphabets() {
        let h = parse_hom("# a map\nx -> ab\ny -> B\n").unwrap();
        assert_eq!(h.domain().symbols(), ["x", "y"]);
        assert_eq!(h.codomain().symbols(), ["a", "b"]);
        assert_eq!(format_word(h.codomain(), &h.images()[1]), "B");
    }

    #[test]
    fn family_shares_codomain() {
        let maps = load_family(&["x -> a\ny -> b", "y -> c\nx -> a"]).unwrap();
        assert_eq!(maps[0].codomain().symbols(), ["a", "b", "c"]);
        assert_eq!(maps[1].domain(), maps[0].domain());
        assert_eq!(format_word(maps[1].codomain(), &maps[1].images()[1]), "c");
    }

    #[test]
    fn extended_style() {
        let h = parse_hom("x' -> x1 x2^-1\ny' -> x2^3").unwrap();
        assert_eq!(h.codomain().symbols(), ["x1", "x2"]);
        assert_eq!(h.images()[1].len(), 3);
    }

    #[test]
    fn round_trip() {
        let h = parse_hom("codomain: a b c\nx -> abC\ny -> 1\n").unwrap();
        assert_eq!(parse_hom(&print_hom(&h)).unwrap(), h);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_hom("domain: x y\nx -> a\ny -> a?b\n").unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 3, .. }), "{err}");
        let err = parse_hom("codomain: a b\nx -> ab\ny ->  aq\n").unwrap_err();
        assert_eq!(
            err,
            Error::Malformed {
                line: 3,
                column: 8,
                message: "unknown generator `q`".into()
            }
        );
        assert!(parse_hom("x -> a\nx -> b").is_err());
        assert!(parse_hom("domain: x y\nx -> a").is_err());
        assert!(parse_hom("x = a").is_err());
    }

    #[test]
    fn endomorphisms_over_a_given_alphabet() {
        let abc = Alphabet::new(["a", "b", "c"]).unwrap();
        let rho = parse_endomorphism("a -> a\nb -> b\nc -> 1", &abc).unwrap();
        assert_eq!(rho.codomain(), &abc);
        assert!(parse_endomorphism("a -> a\nb -> b", &abc).is_err());
    }
}
