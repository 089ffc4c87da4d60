//! Text form `(a + b*sqrt(d))` and the JSON tree for tower elements.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FieldError, QuadraticTower, TowerElement};
use crate::scalar::parse_rational;

/// Structural view shared by the text and JSON forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TowerTree {
    Rational(String),
    Node { a: Box<TowerTree>, b: Box<TowerTree>, sqrt: Box<TowerTree> },
}

fn tree_of(coords: &[BigRational], tower: &QuadraticTower) -> TowerTree {
    if coords.len() == 1 {
        return TowerTree::Rational(coords[0].to_string());
    }
    let l = coords.len().trailing_zeros() as usize - 1;
    let (a, b) = coords.split_at(coords.len() / 2);
    TowerTree::Node {
        a: Box::new(tree_of(a, tower)),
        b: Box::new(tree_of(b, tower)),
        sqrt: Box::new(tree_of(&tower.levels()[l], tower)),
    }
}

type Built = (Vec<BigRational>, Vec<Vec<BigRational>>);

fn build(tree: &TowerTree) -> Result<Built, FieldError> {
    match tree {
        TowerTree::Rational(s) => {
            let q = parse_rational(s).map_err(|e| FieldError::Parse(e.to_string()))?;
            Ok((vec![q], Vec::new()))
        }
        TowerTree::Node { a, b, sqrt } => {
            let (ca, la) = build(a)?;
            let (cb, lb) = build(b)?;
            let (cd, ld) = build(sqrt)?;
            if la != ld || lb != ld {
                return Err(FieldError::InvalidTower("components live in different towers".into()));
            }
            let mut levels = ld;
            levels.push(cd);
            let mut coords = ca;
            coords.extend(cb);
            Ok((coords, levels))
        }
    }
}

impl QuadraticTower {
    pub(crate) fn from_levels(levels: Vec<Vec<BigRational>>) -> Result<Self, FieldError> {
        let mut t = QuadraticTower::rationals();
        for (j, d) in levels.into_iter().enumerate() {
            if d.len() != 1 << j {
                return Err(FieldError::InvalidTower(format!("radicand {} has {} coordinates", j, d.len())));
            }
            let de = TowerElement::from_coords(&t, d)?;
            let adj = t.adjoin_sqrt(&de)?;
            if !adj.extended {
                return Err(FieldError::InvalidTower(format!("radicand {} is already a square", de)));
            }
            t = adj.tower;
        }
        Ok(t)
    }
}

impl TowerElement {
    pub fn to_tree(&self) -> TowerTree {
        tree_of(self.coords(), self.tower())
    }

    pub fn from_tree(tree: &TowerTree) -> Result<TowerElement, FieldError> {
        let (coords, levels) = build(tree)?;
        let tower = QuadraticTower::from_levels(levels)?;
        TowerElement::from_coords(&tower, coords)
    }

    /// Parses the text form written by `Display`.
    pub fn parse(text: &str) -> Result<TowerElement, FieldError> {
        let mut p = Parser { s: text.as_bytes(), i: 0 };
        let tree = p.element()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(FieldError::Parse(format!("trailing input at byte {}", p.i)));
        }
        Self::from_tree(&tree)
    }

    /// Text form at the smallest level containing the value.
    pub fn to_compact_string(&self) -> String {
        self.reduced().to_string()
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tree(f, &self.to_tree())
    }
}

fn write_tree(f: &mut fmt::Formatter<'_>, t: &TowerTree) -> fmt::Result {
    match t {
        TowerTree::Rational(s) => write!(f, "{}", s),
        TowerTree::Node { a, b, sqrt } => {
            write!(f, "(")?;
            write_tree(f, a)?;
            write!(f, " + ")?;
            write_tree(f, b)?;
            write!(f, "*sqrt(")?;
            write_tree(f, sqrt)?;
            write!(f, "))")
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), FieldError> {
        self.ws();
        if self.s[self.i..].starts_with(lit.as_bytes()) {
            self.i += lit.len();
            Ok(())
        } else {
            Err(FieldError::Parse(format!("expected `{}` at byte {}", lit, self.i)))
        }
    }

    fn element(&mut self) -> Result<TowerTree, FieldError> {
        self.ws();
        if self.s.get(self.i) == Some(&b'(') {
            self.i += 1;
            let a = self.element()?;
            self.expect("+")?;
            let b = self.element()?;
            self.expect("*")?;
            self.expect("sqrt")?;
            self.expect("(")?;
            let d = self.element()?;
            self.expect(")")?;
            self.expect(")")?;
            return Ok(TowerTree::Node { a: Box::new(a), b: Box::new(b), sqrt: Box::new(d) });
        }
        let start = self.i;
        if self.s.get(self.i) == Some(&b'-') {
            self.i += 1;
        }
        while self.i < self.s.len() && (self.s[self.i].is_ascii_digit() || self.s[self.i] == b'/') {
            self.i += 1;
        }
        let tok = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        if tok.is_empty() || tok == "-" {
            return Err(FieldError::Parse(format!("expected a rational at byte {}", start)));
        }
        let (n, d) = tok.split_once('/').unwrap_or((tok, "1"));
        let n: BigInt = n.parse().map_err(|_| FieldError::Parse(format!("bad integer `{}`", n)))?;
        let d: BigInt = d.parse().map_err(|_| FieldError::Parse(format!("bad integer `{}`", d)))?;
        if d.is_zero() {
            return Err(FieldError::Parse("zero denominator".into()));
        }
        Ok(TowerTree::Rational(BigRational::new(n, d).to_string()))
    }
}

impl Serialize for TowerElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_tree().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TowerElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let tree = TowerTree::deserialize(d)?;
        TowerElement::from_tree(&tree).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_of_nested_element() {
        let s2 = TowerElement::from_i64(2).sqrt().unwrap();
        let r = (&TowerElement::from_i64(2) + &s2).sqrt().unwrap();
        let x = &r + &TowerElement::from_i64(1);
        let text = x.to_string();
        assert_eq!(text, "((1 + 0*sqrt(2)) + (1 + 0*sqrt(2))*sqrt((2 + 1*sqrt(2))))");
        let back = TowerElement::parse(&text).unwrap();
        assert_eq!(back.coords(), x.coords());
        assert!(back.tower().same_as(x.tower()));
    }

    #[test]
    fn rejects_square_radicands() {
        assert!(TowerElement::parse("(1 + 1*sqrt(4))").is_err());
        assert!(TowerElement::parse("(1 + 1*sqrt(-2))").is_err());
        assert!(TowerElement::parse("(1 + 1*sqrt(2)").is_err());
        assert!(TowerElement::parse("3/0").is_err());
    }

    #[test]
    fn json_tree_round_trip() {
        let x = (&TowerElement::from_i64(3).sqrt().unwrap() + &TowerElement::from_i64(5).sqrt().unwrap())
            * TowerElement::from(BigRational::new(1.into(), 7.into()));
        let j = serde_json::to_string(&x).unwrap();
        let back: TowerElement = serde_json::from_str(&j).unwrap();
        assert_eq!(back.coords(), x.coords());
        assert_eq!(serde_json::to_string(&TowerElement::from_i64(-4)).unwrap(), "\"-4\"");
    }
}
