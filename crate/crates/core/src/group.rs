//! Exact word arithmetic for groups with a solvable word problem.
//!
//! Every element is stored in normal form: freely reduced words for free
//! groups, exponent vectors for free abelian groups, `(integer, residue)`
//! pairs for `Z x Z/n`, and component tuples for direct products. Elements
//! carry their own shape (rank, order, factor list), so products of elements
//! from different groups are detected instead of silently computed.
//!
//! Generators are labelled `a, b, c, d, f, g, ...` (the letter `e` is reserved
//! for the identity); the upper-case letter denotes the inverse. Letters are
//! encoded as `2k` for generator `k` and `2k + 1` for its inverse, so the code
//! order is `a < A < b < B < ...` and shortlex comparison of codes gives the
//! enumeration order used everywhere.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Generator labels. `e` is skipped so that it can always denote the identity.
pub const ALPHABET: &[u8] = b"abcdfghijklmnopqrstuvwxyz";

/// Default cap on enumerated ball sizes.
pub const DEFAULT_CAPACITY: usize = 1_000_000;

/// A letter code: `2k` is generator `k`, `2k + 1` its inverse.
pub type Letter = u8;

#[inline]
pub fn inverse_letter(code: Letter) -> Letter {
    code ^ 1
}

/// The supported group families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupModel {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    /// `Z x Z/order`, generated by `a` (the infinite factor) and `b`.
    CyclicTimesFinite { order: u32 },
    Product { factors: Vec<GroupModel> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Word {
    Free {
        rank: u8,
        letters: SmallVec<[Letter; 16]>,
    },
    Abelian(SmallVec<[i64; 4]>),
    CyclicFinite {
        z: i64,
        r: u32,
        order: u32,
    },
    Product(Vec<GroupElement>),
}

/// A group element in normal form together with its word length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    word: Word,
    length: u32,
}

impl GroupModel {
    pub fn free(rank: usize) -> Self {
        GroupModel::Free { rank }
    }

    pub fn free_abelian(rank: usize) -> Self {
        GroupModel::FreeAbelian { rank }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GroupModel::Free { rank } | GroupModel::FreeAbelian { rank } if *rank == 0 => {
                return Err(Error::InvalidGroup("rank must be at least 1".into()))
            }
            GroupModel::CyclicTimesFinite { order: 0 } => {
                return Err(Error::InvalidGroup("finite order must be at least 1".into()))
            }
            GroupModel::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidGroup("product needs at least one factor".into()));
                }
                for f in factors {
                    f.validate()?;
                }
            }
            _ => {}
        }
        if self.generator_count() > ALPHABET.len() {
            return Err(Error::InvalidGroup(format!(
                "{} generators exceed the {}-letter alphabet",
                self.generator_count(),
                ALPHABET.len()
            )));
        }
        if let GroupModel::Free { rank } = self {
            if *rank > u8::MAX as usize {
                return Err(Error::InvalidGroup("free rank too large".into()));
            }
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        match self {
            GroupModel::Free { rank } | GroupModel::FreeAbelian { rank } => *rank,
            GroupModel::CyclicTimesFinite { .. } => 2,
            GroupModel::Product { factors } => factors.iter().map(|f| f.generator_count()).sum(),
        }
    }

    pub fn labels(&self) -> Vec<char> {
        ALPHABET[..self.generator_count().min(ALPHABET.len())]
            .iter()
            .map(|&b| b as char)
            .collect()
    }

    /// All letter codes of the symmetric generating set, in shortlex order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..(2 * self.generator_count()) as Letter
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupModel::Free { rank } => GroupElement {
                word: Word::Free {
                    rank: *rank as u8,
                    letters: SmallVec::new(),
                },
                length: 0,
            },
            GroupModel::FreeAbelian { rank } => GroupElement {
                word: Word::Abelian(SmallVec::from_elem(0, *rank)),
                length: 0,
            },
            GroupModel::CyclicTimesFinite { order } => GroupElement {
                word: Word::CyclicFinite {
                    z: 0,
                    r: 0,
                    order: *order,
                },
                length: 0,
            },
            GroupModel::Product { factors } => GroupElement {
                word: Word::Product(factors.iter().map(|f| f.identity()).collect()),
                length: 0,
            },
        }
    }

    /// The element represented by a single letter code.
    pub fn letter(&self, code: Letter) -> Result<GroupElement> {
        if code as usize >= 2 * self.generator_count() {
            return Err(Error::UnknownGenerator(format!("#{code}")));
        }
        let gen = (code / 2) as usize;
        let sign: i64 = if code.is_multiple_of(2) { 1 } else { -1 };
        Ok(match self {
            GroupModel::Free { rank } => GroupElement {
                word: Word::Free {
                    rank: *rank as u8,
                    letters: SmallVec::from_slice(&[code]),
                },
                length: 1,
            },
            GroupModel::FreeAbelian { rank } => {
                let mut v: SmallVec<[i64; 4]> = SmallVec::from_elem(0, *rank);
                v[gen] = sign;
                GroupElement {
                    word: Word::Abelian(v),
                    length: 1,
                }
            }
            GroupModel::CyclicTimesFinite { order } => {
                let (z, r) = if gen == 0 {
                    (sign, 0)
                } else if sign > 0 {
                    (0, 1 % order)
                } else {
                    (0, (order - 1) % order)
                };
                GroupElement::cyclic_finite(z, r, *order)
            }
            GroupModel::Product { factors } => {
                let mut offset = 0usize;
                let mut comps = Vec::with_capacity(factors.len());
                for f in factors {
                    let n = f.generator_count();
                    if gen >= offset && gen < offset + n {
                        comps.push(f.letter(code - 2 * offset as Letter)?);
                    } else {
                        comps.push(f.identity());
                    }
                    offset += n;
                }
                GroupElement::product(comps)
            }
        })
    }

    /// The `k`-th generator (0-based).
    pub fn generator(&self, k: usize) -> Result<GroupElement> {
        self.letter((2 * k) as Letter)
    }

    /// Whether `x` has the shape of an element of this group.
    pub fn contains(&self, x: &GroupElement) -> bool {
        match (self, &x.word) {
            (GroupModel::Free { rank }, Word::Free { rank: r, .. }) => *rank == *r as usize,
            (GroupModel::FreeAbelian { rank }, Word::Abelian(v)) => *rank == v.len(),
            (GroupModel::CyclicTimesFinite { order }, Word::CyclicFinite { order: o, .. }) => order == o,
            (GroupModel::Product { factors }, Word::Product(comps)) => {
                factors.len() == comps.len() && factors.iter().zip(comps).all(|(f, c)| f.contains(c))
            }
            _ => false,
        }
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Normal form of a raw letter sequence.
    pub fn normal_form(&self, raw: &[Letter]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for &code in raw {
            let l = self.letter(code)?;
            acc = acc.mul(&l);
        }
        Ok(acc)
    }

    /// Parses a word such as `"a b A"`, `"abA"`, `"a^3 B^-2"` or `"e"`.
    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        let labels = self.labels();
        let mut codes: Vec<Letter> = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        while pos < chars.len() {
            let c = chars[pos];
            pos += 1;
            if c.is_whitespace() || c == '*' || c == '.' || c == '·' {
                continue;
            }
            if c == 'e' || c == '1' {
                continue;
            }
            let base = labels
                .iter()
                .position(|&l| l == c.to_ascii_lowercase())
                .ok_or_else(|| Error::UnknownGenerator(c.to_string()))?;
            if !c.is_ascii_alphabetic() {
                return Err(Error::UnknownGenerator(c.to_string()));
            }
            let mut code = (2 * base) as Letter + if c.is_ascii_uppercase() { 1 } else { 0 };
            let mut reps: i64 = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let start = pos;
                if pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
                    pos += 1;
                }
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = chars[start..pos].iter().collect();
                reps = digits
                    .parse()
                    .map_err(|_| Error::UnknownGenerator(format!("{c}^{digits}")))?;
            }
            if reps < 0 {
                code = inverse_letter(code);
                reps = -reps;
            }
            codes.extend(std::iter::repeat_n(code, reps as usize));
        }
        self.normal_form(&codes)
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.mul(y))
    }

    pub fn invert(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(x.inverse())
    }

    /// Breadth-first enumeration of all elements of word length at most `radius`.
    pub fn ball(&self, radius: u32, capacity: usize) -> Result<Ball> {
        let generators: Vec<GroupElement> = self
            .letters()
            .map(|c| self.letter(c))
            .collect::<Result<_>>()?;
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let e = self.identity();
        seen.insert(e.clone());
        let mut elements = vec![e.clone()];
        let mut sphere_starts = vec![0usize];
        let mut frontier = vec![e];
        for level in 1..=radius {
            let mut next: Vec<GroupElement> = Vec::new();
            for x in &frontier {
                for s in &generators {
                    let y = x.mul(s);
                    if y.length == level && seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            next.sort();
            sphere_starts.push(elements.len());
            if elements.len() + next.len() > capacity {
                return Err(Error::CapacityExceeded {
                    what: "ball enumeration",
                    limit: capacity,
                });
            }
            elements.extend(next.iter().cloned());
            if next.is_empty() {
                // finite group exhausted
                frontier = next;
                continue;
            }
            frontier = next;
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        Ok(Ball {
            radius,
            elements,
            index,
            sphere_starts,
        })
    }
}

impl GroupElement {
    fn cyclic_finite(z: i64, r: u32, order: u32) -> Self {
        let rr = r.min(order - r);
        let rr = if r == 0 { 0 } else { rr };
        GroupElement {
            word: Word::CyclicFinite { z, r, order },
            length: z.unsigned_abs() as u32 + rr,
        }
    }

    fn product(comps: Vec<GroupElement>) -> Self {
        let length = comps.iter().map(|c| c.length).sum();
        GroupElement {
            word: Word::Product(comps),
            length,
        }
    }

    /// Builds an element of `Z^k` from its exponent vector.
    pub fn from_exponents(exponents: &[i64]) -> Self {
        GroupElement {
            word: Word::Abelian(SmallVec::from_slice(exponents)),
            length: exponents.iter().map(|x| x.unsigned_abs() as u32).sum(),
        }
    }

    /// Exponent vector of a free abelian element.
    pub fn exponents(&self) -> Option<&[i64]> {
        match &self.word {
            Word::Abelian(v) => Some(v),
            _ => None,
        }
    }

    /// Letter codes of a free group element.
    pub fn free_letters(&self) -> Option<&[Letter]> {
        match &self.word {
            Word::Free { letters, .. } => Some(letters),
            _ => None,
        }
    }

    /// `(integer part, residue)` of an element of `Z x Z/n`.
    pub fn cyclic_parts(&self) -> Option<(i64, u32)> {
        match self.word {
            Word::CyclicFinite { z, r, .. } => Some((z, r)),
            _ => None,
        }
    }

    pub fn components(&self) -> Option<&[GroupElement]> {
        match &self.word {
            Word::Product(c) => Some(c),
            _ => None,
        }
    }

    /// Word length with respect to the standard generating set.
    #[allow(clippy::len_without_is_empty)]
    #[inline]
    pub fn len(&self) -> u32 {
        self.length
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn same_shape(&self, other: &GroupElement) -> bool {
        match (&self.word, &other.word) {
            (Word::Free { rank: a, .. }, Word::Free { rank: b, .. }) => a == b,
            (Word::Abelian(a), Word::Abelian(b)) => a.len() == b.len(),
            (Word::CyclicFinite { order: a, .. }, Word::CyclicFinite { order: b, .. }) => a == b,
            (Word::Product(a), Word::Product(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y))
            }
            _ => false,
        }
    }

    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.same_shape(other) {
            Ok(self.mul(other))
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Product in normal form. Panics if the shapes differ; use
    /// [`GroupElement::try_mul`] for untrusted input.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        match (&self.word, &other.word) {
            (Word::Free { rank, letters: x }, Word::Free { rank: r2, letters: y }) => {
                assert_eq!(rank, r2, "free group rank mismatch");
                let mut out: SmallVec<[Letter; 16]> = SmallVec::with_capacity(x.len() + y.len());
                out.extend_from_slice(x);
                for &c in y.iter() {
                    if out.last() == Some(&inverse_letter(c)) {
                        out.pop();
                    } else {
                        out.push(c);
                    }
                }
                let length = out.len() as u32;
                GroupElement {
                    word: Word::Free {
                        rank: *rank,
                        letters: out,
                    },
                    length,
                }
            }
            (Word::Abelian(x), Word::Abelian(y)) => {
                assert_eq!(x.len(), y.len(), "free abelian rank mismatch");
                let v: SmallVec<[i64; 4]> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                GroupElement::from_exponents(&v)
            }
            (
                Word::CyclicFinite { z, r, order },
                Word::CyclicFinite {
                    z: z2,
                    r: r2,
                    order: o2,
                },
            ) => {
                assert_eq!(order, o2, "finite order mismatch");
                GroupElement::cyclic_finite(z + z2, (r + r2) % order, *order)
            }
            (Word::Product(x), Word::Product(y)) => {
                assert_eq!(x.len(), y.len(), "product arity mismatch");
                GroupElement::product(x.iter().zip(y).map(|(a, b)| a.mul(b)).collect())
            }
            _ => panic!("group element shape mismatch"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match &self.word {
            Word::Free { rank, letters } => GroupElement {
                word: Word::Free {
                    rank: *rank,
                    letters: letters.iter().rev().map(|&c| inverse_letter(c)).collect(),
                },
                length: self.length,
            },
            Word::Abelian(v) => {
                let neg: SmallVec<[i64; 4]> = v.iter().map(|x| -x).collect();
                GroupElement::from_exponents(&neg)
            }
            Word::CyclicFinite { z, r, order } => {
                GroupElement::cyclic_finite(-z, (order - r) % order, *order)
            }
            Word::Product(c) => GroupElement::product(c.iter().map(|x| x.inverse()).collect()),
        }
    }

    pub fn pow(&self, n: i64) -> GroupElement {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = self.mul(&self.inverse());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Whether `self * other == other * self`.
    pub fn commutes_with(&self, other: &GroupElement) -> bool {
        self.mul(other) == other.mul(self)
    }

    fn generator_count(&self) -> usize {
        match &self.word {
            Word::Free { rank, .. } => *rank as usize,
            Word::Abelian(v) => v.len(),
            Word::CyclicFinite { .. } => 2,
            Word::Product(c) => c.iter().map(|x| x.generator_count()).sum(),
        }
    }

    /// The normal form spelled as a letter-code sequence.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.length as usize);
        self.push_letters(0, &mut out);
        out
    }

    fn push_letters(&self, offset: Letter, out: &mut Vec<Letter>) {
        match &self.word {
            Word::Free { letters, .. } => out.extend(letters.iter().map(|&c| c + offset)),
            Word::Abelian(v) => {
                for (j, &x) in v.iter().enumerate() {
                    let code = offset + 2 * j as Letter + if x < 0 { 1 } else { 0 };
                    out.extend(std::iter::repeat_n(code, x.unsigned_abs() as usize));
                }
            }
            Word::CyclicFinite { z, r, order } => {
                let code = offset + if *z < 0 { 1 } else { 0 };
                out.extend(std::iter::repeat_n(code, z.unsigned_abs() as usize));
                if *r != 0 {
                    if *r <= order - r {
                        out.extend(std::iter::repeat_n(offset + 2, *r as usize));
                    } else {
                        out.extend(std::iter::repeat_n(offset + 3, (order - r) as usize));
                    }
                }
            }
            Word::Product(c) => {
                let mut off = offset;
                for x in c {
                    x.push_letters(off, out);
                    off += 2 * x.generator_count() as Letter;
                }
            }
        }
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length.cmp(&other.length).then_with(|| match (&self.word, &other.word) {
            (Word::Free { letters: a, .. }, Word::Free { letters: b, .. }) => a.cmp(b),
            _ => self.letters().cmp(&other.letters()),
        })
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    /// Run-length compressed word, e.g. `a^3 b A^2`; the identity prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.letters();
        if letters.is_empty() {
            return f.write_str("e");
        }
        let mut first = true;
        let mut i = 0;
        while i < letters.len() {
            let c = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == c {
                j += 1;
            }
            let label = ALPHABET[(c / 2) as usize] as char;
            let label = if c % 2 == 1 { label.to_ascii_uppercase() } else { label };
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "{label}")?;
            } else {
                write!(f, "{label}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A word-metric ball, in shortlex order, with an element index.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: u32,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    sphere_starts: Vec<usize>,
}

impl Ball {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.elements.iter()
    }

    pub fn get(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn position(&self, x: &GroupElement) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.index.contains_key(x)
    }

    /// Elements of exact length `n`.
    pub fn sphere(&self, n: u32) -> &[GroupElement] {
        let n = n as usize;
        if n >= self.sphere_starts.len() {
            return &[];
        }
        let start = self.sphere_starts[n];
        let end = self
            .sphere_starts
            .get(n + 1)
            .copied()
            .unwrap_or(self.elements.len());
        &self.elements[start..end]
    }

    /// Elements of length at most `r` (a prefix, since the ball is shortlex sorted).
    pub fn within(&self, r: u32) -> &[GroupElement] {
        let end = self
            .sphere_starts
            .get(r as usize + 1)
            .copied()
            .unwrap_or(self.elements.len());
        &self.elements[..end]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> GroupModel {
        GroupModel::free(2)
    }

    #[test]
    fn free_reduction_examples() {
        let g = f2();
        assert_eq!(g.parse("a A b").unwrap(), g.parse("b").unwrap());
        assert_eq!(g.parse("a b B a").unwrap().to_string(), "a^2");
        let x = g.parse("a b").unwrap();
        let y = g.parse("B a").unwrap();
        assert_eq!(g.multiply(&x, &y).unwrap().to_string(), "a^2");
        let a = g.parse("a").unwrap();
        assert!(g.multiply(&a, &a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn invert_examples() {
        let g = f2();
        assert_eq!(g.parse("ab").unwrap().inverse().to_string(), "B A");
        assert!(g.identity().inverse().is_identity());
        let z2 = GroupModel::free_abelian(2);
        let x = GroupElement::from_exponents(&[3, -1]);
        assert_eq!(z2.invert(&x).unwrap(), GroupElement::from_exponents(&[-3, 1]));
    }

    #[test]
    fn abelian_arithmetic() {
        let z2 = GroupModel::free_abelian(2);
        let x = GroupElement::from_exponents(&[1, 2]);
        let y = GroupElement::from_exponents(&[3, -2]);
        assert_eq!(z2.multiply(&x, &y).unwrap(), GroupElement::from_exponents(&[4, 0]));
        let e1 = z2.generator(0).unwrap();
        let e2 = z2.generator(1).unwrap();
        assert_eq!(e1.mul(&e2), GroupElement::from_exponents(&[1, 1]));
        assert_eq!(z2.parse("a a B").unwrap(), GroupElement::from_exponents(&[2, -1]));
    }

    #[test]
    fn unknown_generator_is_rejected() {
        let g = f2();
        assert!(matches!(g.parse("a c"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(g.normal_form(&[4]), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a2 = f2().parse("a").unwrap();
        let a3 = GroupModel::free(3).parse("a").unwrap();
        assert!(matches!(f2().multiply(&a2, &a3), Err(Error::GroupMismatch)));
        assert!(matches!(a2.try_mul(&a3), Err(Error::GroupMismatch)));
    }

    #[test]
    fn power_syntax() {
        let g = f2();
        assert_eq!(g.parse("a^3 B^-2").unwrap().to_string(), "a^3 b^2");
        assert_eq!(g.parse("e").unwrap(), g.identity());
    }

    #[test]
    fn cyclic_times_finite_lengths() {
        let g = GroupModel::CyclicTimesFinite { order: 5 };
        let x = g.parse("a a b b b").unwrap();
        assert_eq!(x.cyclic_parts(), Some((2, 3)));
        // b^3 = B^2 in Z/5
        assert_eq!(x.len(), 4);
        assert_eq!(x.to_string(), "a^2 B^2");
        let ball = g.ball(2, DEFAULT_CAPACITY).unwrap();
        // |z| + min(r, 5-r) <= 2
        let expected = (-2i64..=2)
            .flat_map(|z| (0u32..5).map(move |r| (z, r)))
            .filter(|&(z, r)| z.unsigned_abs() as u32 + r.min(5 - r) <= 2)
            .count();
        assert_eq!(ball.len(), expected);
    }

    #[test]
    fn product_letters_are_offset() {
        let g = GroupModel::Product {
            factors: vec![GroupModel::free(2), GroupModel::free_abelian(1)],
        };
        let x = g.parse("a c b").unwrap();
        assert_eq!(x.to_string(), "a b c");
        assert_eq!(x.len(), 3);
        assert!(g.contains(&x));
        let y = g.parse("C B").unwrap();
        assert_eq!(x.mul(&y).to_string(), "a");
    }

    #[test]
    fn small_balls() {
        let g = f2();
        assert_eq!(g.ball(0, 10).unwrap().len(), 1);
        let b1 = g.ball(1, 10).unwrap();
        let names: Vec<String> = b1.iter().map(|x| x.to_string()).collect();
        assert_eq!(names, vec!["e", "a", "A", "b", "B"]);
        assert_eq!(g.ball(2, 100).unwrap().len(), 17);
        assert!(matches!(
            g.ball(3, 20),
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
