//! Sign vectors over a fixed, ordered ground set.
//!
//! A [`SignVector`] is packed into two bitmasks (positive and negative
//! coordinates), so ground sets are limited to 64 elements. The textual form
//! is a string over `+`, `-`, `0` read in ground-set order.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Maximum number of ground-set elements a packed sign vector can hold.
pub const MAX_GROUND: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn from_char(c: char) -> Result<Sign> {
        match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            '0' => Ok(Sign::Zero),
            other => Err(Error::InvalidSign(other)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    pub fn of_i64(x: i64) -> Sign {
        match x.cmp(&0) {
            Ordering::Less => Sign::Minus,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Plus,
        }
    }
}

impl core::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }
}

/// Sign of a product.
impl core::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }
}

/// Ordered list of distinct element labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<GroundSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set labelled `1..=n`.
    pub fn numbered(n: usize) -> Result<GroundSet> {
        GroundSet::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    /// Bitmask of the given labels.
    pub fn mask_of<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<u64> {
        let mut m = 0u64;
        for l in labels {
            m |= 1 << self.index_of(l)?;
        }
        Ok(m)
    }

    /// Labels of the elements in `mask`, in ground-set order.
    pub fn labels_of(&self, mask: u64) -> Vec<&str> {
        (0..self.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.labels[i].as_str()).collect()
    }
}

/// Element of `{+, 0, -}^E`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    plus: u64,
    minus: u64,
}

fn full_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl SignVector {
    /// The zero vector of length `len`.
    pub fn zero(len: usize) -> SignVector {
        assert!(len <= MAX_GROUND, "sign vectors hold at most 64 coordinates");
        SignVector { len: len as u8, plus: 0, minus: 0 }
    }

    pub fn from_masks(len: usize, plus: u64, minus: u64) -> Result<SignVector> {
        if len > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(len));
        }
        let full = full_mask(len);
        if plus & minus != 0 || (plus | minus) & !full != 0 {
            return Err(Error::Axiom("overlapping or out-of-range sign masks".into()));
        }
        Ok(SignVector { len: len as u8, plus, minus })
    }

    pub fn from_signs(signs: &[Sign]) -> Result<SignVector> {
        let mut v = SignVector::zero_checked(signs.len())?;
        for (i, s) in signs.iter().enumerate() {
            v.set(i, *s);
        }
        Ok(v)
    }

    fn zero_checked(len: usize) -> Result<SignVector> {
        if len > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(len));
        }
        Ok(SignVector::zero(len))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn plus_mask(&self) -> u64 {
        self.plus
    }

    pub fn minus_mask(&self) -> u64 {
        self.minus
    }

    /// Bitmask of nonzero coordinates.
    pub fn support(&self) -> u64 {
        self.plus | self.minus
    }

    /// Bitmask of zero coordinates.
    pub fn zero_set(&self) -> u64 {
        !self.support() & full_mask(self.len())
    }

    pub fn is_zero(&self) -> bool {
        self.support() == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        if self.plus >> i & 1 == 1 {
            Sign::Plus
        } else if self.minus >> i & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        assert!(i < self.len());
        let bit = 1u64 << i;
        self.plus &= !bit;
        self.minus &= !bit;
        match s {
            Sign::Plus => self.plus |= bit,
            Sign::Minus => self.minus |= bit,
            Sign::Zero => {}
        }
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    fn check_len(&self, other: &SignVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }

    /// `(X∘Y)_e = X_e` if `X_e ≠ 0`, else `Y_e`.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        self.check_len(other)?;
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &SignVector) -> SignVector {
        let free = !self.support();
        SignVector { len: self.len, plus: self.plus | (other.plus & free), minus: self.minus | (other.minus & free) }
    }

    /// Bitmask of `{e | X_e = -Y_e ≠ 0}`.
    pub fn separation_set(&self, other: &SignVector) -> Result<u64> {
        self.check_len(other)?;
        Ok(self.separation_unchecked(other))
    }

    #[inline]
    pub(crate) fn separation_unchecked(&self, other: &SignVector) -> u64 {
        (self.plus & other.minus) | (self.minus & other.plus)
    }

    pub fn negate(&self) -> SignVector {
        SignVector { len: self.len, plus: self.minus, minus: self.plus }
    }

    /// Product order: `X ≤ Y` iff every coordinate has `X_e = 0` or `X_e = Y_e`.
    pub fn sv_leq(&self, other: &SignVector) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.leq_unchecked(other))
    }

    #[inline]
    pub(crate) fn leq_unchecked(&self, other: &SignVector) -> bool {
        self.plus & !other.plus == 0 && self.minus & !other.minus == 0
    }

    /// Flips the coordinates in `mask`.
    pub fn reorient(&self, mask: u64) -> SignVector {
        let keep = !mask;
        SignVector {
            len: self.len,
            plus: (self.plus & keep) | (self.minus & mask),
            minus: (self.minus & keep) | (self.plus & mask),
        }
    }

    /// Restriction to the coordinates in `mask`, re-indexed densely.
    pub fn restrict(&self, mask: u64) -> SignVector {
        let mut out = SignVector::zero(mask.count_ones() as usize);
        let mut j = 0;
        for i in 0..self.len() {
            if mask >> i & 1 == 1 {
                out.set(j, self.get(i));
                j += 1;
            }
        }
        out
    }
}

impl Ord for SignVector {
    /// Lexicographic in ground-set order, with `-` < `0` < `+` per coordinate.
    fn cmp(&self, other: &SignVector) -> Ordering {
        let diff = (self.plus ^ other.plus) | (self.minus ^ other.minus);
        if diff == 0 {
            return self.len.cmp(&other.len);
        }
        let i = diff.trailing_zeros() as usize;
        self.get(i).cmp(&other.get(i))
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &SignVector) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            fmt::Write::write_char(f, s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignVector> {
        let signs = s.chars().map(Sign::from_char).collect::<Result<Vec<_>>>()?;
        SignVector::from_signs(&signs)
    }
}

/// Parses a sign-vector string and checks its length against the ground set.
pub fn parse_over(ground: &GroundSet, s: &str) -> Result<SignVector> {
    let v: SignVector = s.parse()?;
    if v.len() != ground.len() {
        return Err(Error::DimensionMismatch { expected: ground.len(), found: v.len() });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn all_vectors(n: usize) -> Vec<SignVector> {
        let mut out = Vec::new();
        for code in 0..3usize.pow(n as u32) {
            let mut c = code;
            let mut v = SignVector::zero(n);
            for i in 0..n {
                v.set(i, [Sign::Minus, Sign::Zero, Sign::Plus][c % 3]);
                c /= 3;
            }
            out.push(v);
        }
        out
    }

    #[test]
    fn compose_examples() {
        assert_eq!(sv("+0").compose(&sv("0-")).unwrap(), sv("+-"));
        let x = sv("+0-");
        assert_eq!(x.compose(&x).unwrap(), x);
        let y = sv("-+0");
        assert_eq!(SignVector::zero(3).compose(&y).unwrap(), y);
    }

    #[test]
    fn separation_examples() {
        assert_eq!(sv("+++").separation_set(&sv("-+0")).unwrap(), 0b001);
        let x = sv("+-0");
        assert_eq!(x.separation_set(&x).unwrap(), 0);
        let t = sv("+-+");
        assert_eq!(t.separation_set(&t.negate()).unwrap(), t.support());
    }

    #[test]
    fn negate_examples() {
        assert_eq!(sv("+0-").negate(), sv("-0+"));
        assert_eq!(SignVector::zero(4).negate(), SignVector::zero(4));
        let x = sv("0+-0");
        assert_eq!(x.separation_set(&x.negate()).unwrap(), x.support());
    }

    #[test]
    fn leq_examples() {
        assert!(sv("0+").sv_leq(&sv("-+")).unwrap());
        assert!(!sv("+0").sv_leq(&sv("-+")).unwrap());
        for y in all_vectors(3) {
            assert!(SignVector::zero(3).sv_leq(&y).unwrap());
        }
    }

    #[test]
    fn dimension_errors() {
        let a = sv("+0");
        let b = sv("+0-");
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.separation_set(&b).is_err());
        assert!(a.sv_leq(&b).is_err());
    }

    #[test]
    fn text_round_trip_and_errors() {
        for v in all_vectors(4) {
            assert_eq!(sv(&format!("{v}")), v);
        }
        assert_eq!("+x".parse::<SignVector>(), Err(Error::InvalidSign('x')));
        let g = GroundSet::numbered(3).unwrap();
        assert!(parse_over(&g, "+-").is_err());
        assert!(GroundSet::new(["a", "b", "a"]).is_err());
    }

    #[test]
    fn exhaustive_laws() {
        let vs = all_vectors(4);
        for x in &vs {
            assert_eq!(x.negate().negate(), *x);
            for y in &vs {
                let xy = x.compose(y).unwrap();
                assert!(x.sv_leq(&xy).unwrap());
                assert_eq!(x.separation_set(y).unwrap(), y.separation_set(x).unwrap());
                assert_eq!(x.negate().separation_set(&y.negate()).unwrap(), x.separation_set(y).unwrap());
            }
        }
        // associativity over all triples, |E| = 4
        for x in &vs {
            for y in &vs {
                let xy = x.compose(y).unwrap();
                for z in &vs {
                    assert_eq!(xy.compose(z).unwrap(), x.compose(&y.compose(z).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = [sv("+0"), sv("0-"), sv("-+"), sv("00")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["-+", "0-", "00", "+0"]);
    }
}
