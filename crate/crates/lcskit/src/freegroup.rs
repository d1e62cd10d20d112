//! Free-group words and the presentation parser.
//!
//! A [`Word`] is a freely reduced word over generators x₁, x₂, … of a free
//! group. Letters are stored as nonzero `i32`s: the absolute value is the
//! 1-based generator index, the sign is the exponent. Everything downstream
//! consumes reduced words, so reduction is enforced at construction.

use std::fmt;
use std::ops::Mul;

/// A freely reduced word in a finitely generated free group.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// The generator x_index (1-based).
    pub fn generator(index: u32) -> Self {
        assert!(index >= 1, "generator indices are 1-based");
        Word { letters: vec![index as i32] }
    }

    /// Builds a word from signed letters, reducing as it goes.
    /// Zero letters are rejected.
    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for x in letters {
            assert!(x != 0, "letter 0 is not a generator");
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word { letters: out }
    }

    /// Signed letters of the reduced word.
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Letters as (generator index, exponent sign) pairs.
    pub fn letter_pairs(&self) -> impl Iterator<Item = (u32, i8)> + '_ {
        self.letters.iter().map(|&x| (x.unsigned_abs(), x.signum() as i8))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index occurring in the word (0 for the empty word).
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|x| -x).collect() }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = multiply(&out, &base);
        }
        out
    }

    /// g⁻¹ · self · g.
    pub fn conjugate(&self, g: &Word) -> Word {
        multiply(&multiply(&g.inverse(), self), g)
    }

    /// Strips conjugating ends: while the first letter cancels the last,
    /// remove both. The normal closure of a relator is unchanged.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = self.letters.as_slice();
        while s.len() >= 2 && s[0] == -s[s.len() - 1] {
            s = &s[1..s.len() - 1];
        }
        Word { letters: s.to_vec() }
    }

    /// Exponent sum of the given generator (1-based).
    pub fn exponent_sum(&self, index: u32) -> i64 {
        self.letters
            .iter()
            .filter(|x| x.unsigned_abs() == index)
            .map(|x| x.signum() as i64)
            .sum()
    }

    /// Renders with the given generator names, e.g. `x^-1 y^2`; `1` if empty.
    pub fn render(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<(u32, i64)> = Vec::new();
        for &x in &self.letters {
            let (g, s) = (x.unsigned_abs(), x.signum() as i64);
            match parts.last_mut() {
                Some((pg, pe)) if *pg == g && pe.signum() == s => *pe += s,
                _ => parts.push((g, s)),
            }
        }
        parts
            .iter()
            .map(|&(g, e)| {
                let name = names
                    .get(g as usize - 1)
                    .cloned()
                    .unwrap_or_else(|| format!("x{g}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.letters)
    }
}

/// Freely reduced concatenation.
pub fn multiply(u: &Word, v: &Word) -> Word {
    Word::from_letters(u.letters.iter().chain(v.letters.iter()).copied())
}

/// Formal inverse.
pub fn invert(u: &Word) -> Word {
    u.inverse()
}

/// The commutator u⁻¹v⁻¹uv, freely reduced.
pub fn commutator(u: &Word, v: &Word) -> Word {
    multiply(&multiply(&u.inverse(), &v.inverse()), &multiply(u, v))
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        multiply(self, rhs)
    }
}

/// A finite presentation: generator names plus freely reduced relators.
/// Relators that reduce to the empty word are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, ParseError> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(ParseError::DuplicateGenerator { name: n.clone() });
            }
        }
        let rank = names.len() as u32;
        for r in &relators {
            if r.max_generator() > rank {
                return Err(ParseError::Syntax {
                    line: 0,
                    col: 0,
                    msg: format!(
                        "relator uses generator index {} but rank is {}",
                        r.max_generator(),
                        rank
                    ),
                });
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Ok(Presentation { names, relators })
    }

    pub fn rank(&self) -> u32 {
        self.names.len() as u32
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Same presentation with every relator cyclically reduced.
    pub fn cyclically_reduce(&self) -> Presentation {
        Presentation {
            names: self.names.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| r.cyclically_reduced())
                .filter(|r| !r.is_empty())
                .collect(),
        }
    }

    /// Presentation with the generators renamed/permuted: `perm[i]` is the new
    /// position of generator i+1. Relator letters are remapped accordingly.
    pub fn permute_generators(&self, perm: &[usize]) -> Presentation {
        assert_eq!(perm.len(), self.names.len());
        let mut names = vec![String::new(); self.names.len()];
        for (i, &p) in perm.iter().enumerate() {
            names[p] = self.names[i].clone();
        }
        let relators = self
            .relators
            .iter()
            .map(|r| {
                Word::from_letters(r.letters().iter().map(|&x| {
                    let g = x.unsigned_abs() as usize - 1;
                    let ng = perm[g] as i32 + 1;
                    ng * x.signum()
                }))
            })
            .collect();
        Presentation { names, relators }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown generator `{name}` at line {line}, column {col}")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("zero exponent at line {line}, column {col}")]
    ZeroExponent { line: usize, col: usize },
    #[error("duplicate generator name `{name}`")]
    DuplicateGenerator { name: String },
    #[error("missing `gens` line")]
    MissingGens,
}

/// Parses the line-oriented presentation grammar:
///
/// ```text
/// gens x, y
/// rels [y,x], x^2
/// ```
///
/// `#` starts a comment; blank lines are skipped; the `rels` line may be
/// absent or empty. Words are terms: `name`, `name^k`, `[word,word]`,
/// `(word)^k`, each with optional integer exponent (negative allowed).
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut significant: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if !line.trim().is_empty() {
            significant.push((i + 1, line));
        }
    }
    let mut iter = significant.into_iter();
    let (gens_lineno, gens_line) = iter.next().ok_or(ParseError::MissingGens)?;
    let gens_body = gens_line.trim().strip_prefix("gens").ok_or(ParseError::Syntax {
        line: gens_lineno,
        col: 1,
        msg: "expected `gens`".into(),
    })?;
    let mut names = Vec::new();
    for part in gens_body.split(',') {
        let name = part.trim();
        if name.is_empty() {
            return Err(ParseError::Syntax {
                line: gens_lineno,
                col: 1,
                msg: "empty generator name".into(),
            });
        }
        if !name.chars().next().unwrap().is_alphabetic() && !name.starts_with('_')
            || !name.chars().all(|c| c.is_alphanumeric() || c == '_')
        {
            return Err(ParseError::Syntax {
                line: gens_lineno,
                col: 1,
                msg: format!("invalid generator name `{name}`"),
            });
        }
        names.push(name.to_string());
    }

    let mut relators = Vec::new();
    if let Some((rels_lineno, rels_line)) = iter.next() {
        let rels_body = rels_line.trim().strip_prefix("rels").ok_or(ParseError::Syntax {
            line: rels_lineno,
            col: 1,
            msg: "expected `rels`".into(),
        })?;
        let tokens = tokenize(rels_body, rels_lineno)?;
        relators = parse_relator_list(&tokens, &names, rels_lineno)?;
        if let Some((lineno, _)) = iter.next() {
            return Err(ParseError::Syntax {
                line: lineno,
                col: 1,
                msg: "unexpected content after `rels` line".into(),
            });
        }
    }

    Presentation::new(names, relators)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
}

type Spanned = (Tok, usize); // token + column

fn tokenize(s: &str, line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let offset = 1; // the body starts after `rels`, columns reported within the line
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + offset;
        match c {
            ' ' | '\t' => i += 1,
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '[' => {
                out.push((Tok::LBracket, col));
                i += 1;
            }
            ']' => {
                out.push((Tok::RBracket, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, col));
                i += 1;
            }
            '-' | '0'..='9' => {
                let neg = c == '-';
                let mut j = if neg { i + 1 } else { i };
                let start = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        msg: "expected digits after `-`".into(),
                    });
                }
                let text: String = chars[start..j].iter().collect();
                let val: i64 = text.parse().map_err(|_| ParseError::Syntax {
                    line,
                    col,
                    msg: "integer out of range".into(),
                })?;
                out.push((Tok::Int(if neg { -val } else { val }), col));
                i = j;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                out.push((Tok::Ident(chars[start..j].iter().collect()), col));
                i = j;
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct WordParser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    names: &'a [String],
    line: usize,
}

impl<'a> WordParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|&(_, c)| c)
            .unwrap_or(1)
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, col: self.col(), msg: msg.into() }
    }

    /// Optional `^k` suffix; errors on k = 0.
    fn exponent(&mut self) -> Result<i64, ParseError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        match self.peek() {
            Some(&Tok::Int(k)) => {
                let col = self.col();
                self.pos += 1;
                if k == 0 {
                    return Err(ParseError::ZeroExponent { line: self.line, col });
                }
                Ok(k)
            }
            _ => Err(self.syntax("expected integer exponent after `^`")),
        }
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let base = match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let col = self.col();
                self.pos += 1;
                let idx = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(ParseError::UnknownGenerator { name, line: self.line, col })?;
                Word::generator(idx as u32 + 1)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let left = self.word()?;
                if self.peek() != Some(&Tok::Comma) {
                    return Err(self.syntax("expected `,` inside `[ , ]`"));
                }
                self.pos += 1;
                let right = self.word()?;
                if self.peek() != Some(&Tok::RBracket) {
                    return Err(self.syntax("expected `]`"));
                }
                self.pos += 1;
                commutator(&left, &right)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.syntax("expected a term")),
        };
        let k = self.exponent()?;
        Ok(base.pow(k))
    }

    /// term+ until a delimiter (`,` `]` `)` or end of tokens).
    fn word(&mut self) -> Result<Word, ParseError> {
        let mut out = self.term()?;
        loop {
            match self.peek() {
                None | Some(Tok::Comma) | Some(Tok::RBracket) | Some(Tok::RParen) => break,
                _ => out = multiply(&out, &self.term()?),
            }
        }
        Ok(out)
    }
}

fn parse_relator_list(
    toks: &[Spanned],
    names: &[String],
    line: usize,
) -> Result<Vec<Word>, ParseError> {
    let mut p = WordParser { toks, pos: 0, names, line };
    let mut out = Vec::new();
    if p.peek().is_none() {
        return Ok(out);
    }
    loop {
        out.push(p.word()?);
        match p.peek() {
            None => break,
            Some(Tok::Comma) => p.pos += 1,
            _ => return Err(p.syntax("expected `,` between relators")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(letters: &[i32]) -> Word {
        Word::from_letters(letters.iter().copied())
    }

    /// Reduces by repeatedly cancelling an arbitrary (here: seeded-random)
    /// adjacent inverse pair, character by character. Independent of the
    /// stack reducer used by `Word`.
    fn naive_reduce(mut letters: Vec<i32>, seed: u64) -> Vec<i32> {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
        loop {
            let cancellable: Vec<usize> = (0..letters.len().saturating_sub(1))
                .filter(|&i| letters[i] == -letters[i + 1])
                .collect();
            if cancellable.is_empty() {
                return letters;
            }
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let pick = cancellable[(state >> 33) as usize % cancellable.len()];
            letters.drain(pick..pick + 2);
        }
    }

    #[test]
    fn multiply_cancels() {
        assert_eq!(multiply(&w(&[1]), &w(&[-1])), Word::empty());
        assert_eq!(multiply(&w(&[1, 2]), &w(&[-2, 3])), w(&[1, 3]));
    }

    #[test]
    fn invert_reverses_and_flips() {
        assert_eq!(invert(&w(&[1, 2])), w(&[-2, -1]));
        let u = w(&[1, 2, -1, 2, 2]);
        assert_eq!(invert(&invert(&u)), u);
    }

    #[test]
    fn commutator_definition() {
        assert_eq!(commutator(&w(&[1]), &w(&[1])), Word::empty());
        assert_eq!(commutator(&w(&[2]), &w(&[1])), w(&[-2, -1, 2, 1]));
    }

    #[test]
    fn commutator_against_naive_reducer() {
        // commutator(xy, y) computed via multiply/invert must agree with
        // reducing the unreduced concatenation in arbitrary order.
        let u = w(&[1, 2]);
        let v = w(&[2]);
        let got = commutator(&u, &v);
        let mut raw: Vec<i32> = Vec::new();
        raw.extend(u.letters().iter().rev().map(|x| -x));
        raw.extend(v.letters().iter().rev().map(|x| -x));
        raw.extend(u.letters());
        raw.extend(v.letters());
        for seed in 0..50 {
            assert_eq!(naive_reduce(raw.clone(), seed), got.letters());
        }
    }

    #[test]
    fn cyclic_reduction() {
        // y^-1 x^2 y cyclically reduces to x^2
        assert_eq!(w(&[-2, 1, 1, 2]).cyclically_reduced(), w(&[1, 1]));
        assert_eq!(w(&[1, 2]).cyclically_reduced(), w(&[1, 2]));
    }

    #[test]
    fn parse_commutator_shorthand() {
        let p = parse_presentation("gens x, y\nrels [y,x]").unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.relators(), &[w(&[-2, -1, 2, 1])]);
    }

    #[test]
    fn parse_powers() {
        let p = parse_presentation("gens x, y\nrels x^2, y^2").unwrap();
        assert_eq!(p.relators(), &[w(&[1, 1]), w(&[2, 2])]);
    }

    #[test]
    fn parse_drops_trivial_relator() {
        let p = parse_presentation("gens x\nrels x x^-1").unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn parse_comments_and_nested() {
        let p = parse_presentation(
            "# dihedral-ish\ngens x, y  # two gens\nrels (x y)^2, [y, x]^-1 x^3",
        )
        .unwrap();
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.relators()[0], w(&[1, 2, 1, 2]));
        assert_eq!(
            p.relators()[1],
            multiply(&commutator(&w(&[2]), &w(&[1])).inverse(), &w(&[1, 1, 1]))
        );
    }

    #[test]
    fn parse_empty_rels() {
        let p = parse_presentation("gens x, y\nrels").unwrap();
        assert!(p.relators().is_empty());
        let p = parse_presentation("gens x, y").unwrap();
        assert!(p.relators().is_empty());
    }

    #[test]
    fn parse_errors() {
        match parse_presentation("gens x\nrels z") {
            Err(ParseError::UnknownGenerator { name, line, .. }) => {
                assert_eq!(name, "z");
                assert_eq!(line, 2);
            }
            other => panic!("expected unknown generator, got {other:?}"),
        }
        match parse_presentation("gens x\nrels x^0") {
            Err(ParseError::ZeroExponent { line: 2, .. }) => {}
            other => panic!("expected zero exponent, got {other:?}"),
        }
        match parse_presentation("gens x, x\nrels") {
            Err(ParseError::DuplicateGenerator { name }) => assert_eq!(name, "x"),
            other => panic!("expected duplicate generator, got {other:?}"),
        }
        match parse_presentation("gens x\nrels [x") {
            Err(ParseError::Syntax { line: 2, .. }) => {}
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_presentation("").is_err());
    }

    #[test]
    fn render_words() {
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(w(&[1, 1, -2]).render(&names), "x^2 y^-1");
        assert_eq!(Word::empty().render(&names), "1");
    }

    /// The exact Witt–Hall identity:
    /// [c,b,a] = [c,b]⁻¹[c,a]⁻¹[b,a,c]⁻¹[b,a]⁻¹[c,b][c,a][c,a,b][b,a],
    /// a literal free-group identity, checked over all rank-3 triples.
    #[test]
    fn witt_hall_identity_exact() {
        let gens = [w(&[1]), w(&[2]), w(&[3])];
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let lhs = commutator(&commutator(c, b), a);
                    let rhs = [
                        commutator(c, b).inverse(),
                        commutator(c, a).inverse(),
                        commutator(&commutator(b, a), c).inverse(),
                        commutator(b, a).inverse(),
                        commutator(c, b),
                        commutator(c, a),
                        commutator(&commutator(c, a), b),
                        commutator(b, a),
                    ]
                    .iter()
                    .fold(Word::empty(), |acc, t| multiply(&acc, t));
                    assert_eq!(lhs, rhs, "failed at a={a:?} b={b:?} c={c:?}");
                }
            }
        }
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((1i32..=3, prop::bool::ANY), 0..=max_len)
            .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, neg)| if neg { -g } else { g })))
    }

    proptest! {
        #[test]
        fn reduction_confluent(ls in prop::collection::vec((1i32..=3, prop::bool::ANY), 0..16), seed in 0u64..32) {
            let raw: Vec<i32> = ls.into_iter().map(|(g, neg)| if neg { -g } else { g }).collect();
            let stack = Word::from_letters(raw.clone());
            prop_assert_eq!(naive_reduce(raw, seed), stack.letters());
        }

        #[test]
        fn multiply_associative(u in arb_word(8), v in arb_word(8), t in arb_word(8)) {
            prop_assert_eq!(multiply(&multiply(&u, &v), &t), multiply(&u, &multiply(&v, &t)));
        }

        #[test]
        fn self_commutators_vanish(u in arb_word(8)) {
            prop_assert!(commutator(&u, &u).is_empty());
            prop_assert!(commutator(&u, &u.inverse()).is_empty());
        }
    }
}
