//! m-qubit Pauli operators in binary symplectic form with exact phases.
//!
//! A [`PhasedPauli`] stores a global phase `i^k` together with one `(x, z)`
//! bit pair per qubit. The pair decodes to a letter: `(0,0) = I`,
//! `(1,0) = X`, `(0,1) = Z`, `(1,1) = Y`, where `Y` is the standard Hermitian
//! matrix. The operator is `i^k · L_1 ⊗ L_2 ⊗ … ⊗ L_m`, with qubit 1 the
//! leftmost letter of the text form.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Power of `i`: `Phase(k)` is `i^k`, `k` taken mod 4.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Phase {
        Phase((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// `+1.0` or `-1.0` for real phases, `None` otherwise.
    pub fn sign(self) -> Option<f64> {
        match self.0 {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        use num_complex::Complex64 as C;
        match self.0 {
            0 => C::new(1.0, 0.0),
            1 => C::new(0.0, 1.0),
            2 => C::new(-1.0, 0.0),
            _ => C::new(0.0, -1.0),
        }
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }
}

impl Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Z => (false, true),
            Letter::Y => (true, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (false, true) => Letter::Z,
            (true, true) => Letter::Y,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// An element of the m-qubit Pauli group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    m: usize,
    phase: Phase,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PhasedPauli {
    pub fn identity(m: usize) -> PhasedPauli {
        let w = words_for(m);
        PhasedPauli {
            m,
            phase: Phase::ONE,
            x: vec![0; w],
            z: vec![0; w],
        }
    }

    pub fn from_letters(phase: Phase, letters: &[Letter]) -> PhasedPauli {
        let mut p = PhasedPauli::identity(letters.len());
        p.phase = phase;
        for (q, l) in letters.iter().enumerate() {
            let (x, z) = l.bits();
            p.set_bits(q, x, z);
        }
        p
    }

    /// Single-letter operator acting on `qubit` of an `m`-qubit register.
    pub fn single(m: usize, qubit: usize, letter: Letter) -> PhasedPauli {
        assert!(qubit < m, "qubit {qubit} out of range for {m} qubits");
        let mut p = PhasedPauli::identity(m);
        let (x, z) = letter.bits();
        p.set_bits(qubit, x, z);
        p
    }

    /// Builds an unsigned operator from packed masks, qubit `j` at bit `j`.
    /// Only valid for `m <= 64`.
    pub fn from_masks(m: usize, x: u64, z: u64) -> PhasedPauli {
        assert!(m <= WORD, "mask constructor supports at most 64 qubits");
        let mut p = PhasedPauli::identity(m);
        if m > 0 {
            let keep = if m == WORD { u64::MAX } else { (1u64 << m) - 1 };
            p.x[0] = x & keep;
            p.z[0] = z & keep;
        }
        p
    }

    fn set_bits(&mut self, qubit: usize, x: bool, z: bool) {
        let (w, b) = (qubit / WORD, qubit % WORD);
        let mask = 1u64 << b;
        self.x[w] = (self.x[w] & !mask) | if x { mask } else { 0 };
        self.z[w] = (self.z[w] & !mask) | if z { mask } else { 0 };
    }

    pub fn qubits(&self) -> usize {
        self.m
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn x_bit(&self, qubit: usize) -> bool {
        (self.x[qubit / WORD] >> (qubit % WORD)) & 1 == 1
    }

    pub fn z_bit(&self, qubit: usize) -> bool {
        (self.z[qubit / WORD] >> (qubit % WORD)) & 1 == 1
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x_bit(qubit), self.z_bit(qubit))
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.m).map(|q| self.letter(q)).collect()
    }

    /// Packed `(x, z)` masks, qubit `j` at bit `j`. Only valid for `m <= 64`.
    pub fn masks(&self) -> (u64, u64) {
        assert!(self.m <= WORD, "masks() supports at most 64 qubits");
        if self.m == 0 {
            (0, 0)
        } else {
            (self.x[0], self.z[0])
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    /// True when every letter is `I`, whatever the phase.
    pub fn is_identity_letters(&self) -> bool {
        self.x.iter().chain(self.z.iter()).all(|w| *w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn with_phase(&self, phase: Phase) -> PhasedPauli {
        PhasedPauli {
            phase,
            ..self.clone()
        }
    }

    /// Same letters with phase `+1`.
    pub fn unsigned(&self) -> PhasedPauli {
        self.with_phase(Phase::ONE)
    }

    pub fn negated(&self) -> PhasedPauli {
        self.with_phase(self.phase * Phase::MINUS_ONE)
    }

    /// Same letters, i.e. equal up to a global phase.
    pub fn same_letters(&self, other: &PhasedPauli) -> bool {
        self.m == other.m && self.x == other.x && self.z == other.z
    }

    fn check_same_m(&self, other: &PhasedPauli) -> Result<()> {
        if self.m != other.m {
            return Err(Error::QubitMismatch(self.m, other.m));
        }
        Ok(())
    }

    pub fn commutes(&self, other: &PhasedPauli) -> Result<bool> {
        self.check_same_m(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PhasedPauli) -> bool {
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones() & 1;
        }
        parity == 0
    }

    /// Exact group product `self · other`.
    pub fn multiply(&self, other: &PhasedPauli) -> Result<PhasedPauli> {
        self.check_same_m(other)?;
        // Per-qubit letter products contribute i^{+1} or i^{-1}:
        //   X·Y, Y·Z, Z·X -> +1;   Y·X, Z·Y, X·Z -> -1.
        let mut plus = 0u32;
        let mut minus = 0u32;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.x.len());
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let lx = x1 & !z1;
            let ly = x1 & z1;
            let lz = !x1 & z1;
            let rx = x2 & !z2;
            let ry = x2 & z2;
            let rz = !x2 & z2;
            plus += (lx & ry).count_ones() + (ly & rz).count_ones() + (lz & rx).count_ones();
            minus += (ly & rx).count_ones() + (lz & ry).count_ones() + (lx & rz).count_ones();
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        let k = self.phase.0 as u32 + other.phase.0 as u32 + plus + 3 * minus;
        Ok(PhasedPauli {
            m: self.m,
            phase: Phase::from_exponent(k),
            x,
            z,
        })
    }

    /// Tensor product `self ⊗ extra`; qubit count grows by `extra.qubits()`.
    pub fn embed(&self, extra: &PhasedPauli) -> PhasedPauli {
        let mut out = PhasedPauli::identity(self.m + extra.m);
        out.phase = self.phase * extra.phase;
        for q in 0..self.m {
            out.set_bits(q, self.x_bit(q), self.z_bit(q));
        }
        for q in 0..extra.m {
            out.set_bits(self.m + q, extra.x_bit(q), extra.z_bit(q));
        }
        out
    }

    pub fn symplectic(&self) -> SymplecticVector {
        let mut bits = vec![0u64; words_for(2 * self.m)];
        for q in 0..self.m {
            if self.x_bit(q) {
                bits[q / WORD] |= 1 << (q % WORD);
            }
            if self.z_bit(q) {
                let j = self.m + q;
                bits[j / WORD] |= 1 << (j % WORD);
            }
        }
        SymplecticVector {
            len: 2 * self.m,
            bits,
        }
    }
}

impl Mul for &PhasedPauli {
    type Output = PhasedPauli;

    /// Panics on a qubit-count mismatch; use [`PhasedPauli::multiply`] to
    /// handle it.
    fn mul(self, rhs: &PhasedPauli) -> PhasedPauli {
        self.multiply(rhs)
            .expect("qubit count mismatch in Pauli product")
    }
}

impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase.0 {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.m {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhasedPauli({self})")
    }
}

impl FromStr for PhasedPauli {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let s = text.trim();
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::ONE, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else {
            (Phase::ONE, s)
        };
        if rest.is_empty() {
            return Err(err("no Pauli letters"));
        }
        let letters = rest
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| err(&format!("illegal character {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PhasedPauli::from_letters(phase, &letters))
    }
}

impl Serialize for PhasedPauli {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PhasedPauli {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Phase-free `x ‖ z` bit vector of length `2m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticVector {
    len: usize,
    bits: Vec<u64>,
}

impl SymplecticVector {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.bits[i / WORD] >> (i % WORD)) & 1 == 1
    }

    fn xor_assign(&mut self, other: &SymplecticVector) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
    }

    fn lowest_set_bit(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }
}

/// Rank over GF(2) of a list of symplectic vectors.
pub fn gf2_rank(vectors: &[SymplecticVector]) -> usize {
    // Each basis row is kept with a distinct lowest set bit.
    let mut basis: Vec<(usize, SymplecticVector)> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        while let Some(lead) = v.lowest_set_bit() {
            match basis.iter().find(|(p, _)| *p == lead) {
                Some((_, row)) => v.xor_assign(row),
                None => {
                    basis.push((lead, v));
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Whether no element of `set` is, up to phase, a product of the others.
///
/// The empty set is independent. Any element whose letters are all `I` makes
/// the set dependent.
pub fn independent(set: &[PhasedPauli]) -> Result<bool> {
    let Some(first) = set.first() else {
        return Ok(true);
    };
    for p in set {
        first.check_same_m(p)?;
    }
    let vectors: Vec<_> = set.iter().map(PhasedPauli::symplectic).collect();
    Ok(gf2_rank(&vectors) == set.len())
}

/// Product of a sequence of operators in order, `ops[0] · ops[1] · …`.
pub fn product(m: usize, ops: &[&PhasedPauli]) -> Result<PhasedPauli> {
    ops.iter()
        .try_fold(PhasedPauli::identity(m), |acc, p| acc.multiply(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PhasedPauli {
        s.parse().unwrap()
    }

    #[test]
    fn commutation_basics() {
        assert!(p("X").commutes(&p("X")).unwrap());
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XZ").commutes(&p("ZX")).unwrap());
        assert!(p("-iX").commutes(&p("X")).unwrap());
        assert!(matches!(
            p("X").commutes(&p("XX")),
            Err(Error::QubitMismatch(1, 2))
        ));
    }

    #[test]
    fn single_qubit_products() {
        assert_eq!(&p("X") * &p("Y"), p("iZ"));
        assert_eq!(&p("Y") * &p("Z"), p("iX"));
        assert_eq!(&p("Z") * &p("X"), p("iY"));
        assert_eq!(&p("Y") * &p("X"), p("-iZ"));
        assert_eq!(&p("X") * &p("Z"), p("-iY"));
        assert_eq!(&p("Y") * &p("Y"), p("I"));
    }

    #[test]
    fn four_cycle_edge_products() {
        let cyc = ["XI", "IX", "ZI", "IZ"].map(p);
        let l: Vec<_> = (0..4).map(|i| &cyc[i] * &cyc[(i + 1) % 4]).collect();
        assert_eq!(&l[0] * &l[2], p("-YY"));
        assert_eq!(&l[1] * &l[3], p("YY"));
        // L1 L3 = -P0 P1 P2 P3
        let full = product(2, &[&cyc[0], &cyc[1], &cyc[2], &cyc[3]]).unwrap();
        assert_eq!(&l[1] * &l[3], full.negated());
    }

    #[test]
    fn parse_and_format() {
        let a = p("XZ");
        assert_eq!(a.phase(), Phase::ONE);
        assert_eq!((a.x_bit(0), a.x_bit(1)), (true, false));
        assert_eq!((a.z_bit(0), a.z_bit(1)), (false, true));
        let b = p("-YY");
        assert_eq!(b.phase(), Phase::MINUS_ONE);
        assert!(b.x_bit(0) && b.x_bit(1) && b.z_bit(0) && b.z_bit(1));
        assert_eq!(p("iX").to_string(), "+iX");
        assert_eq!(p("+XZ").to_string(), "XZ");
        assert_eq!(p("-iYI").to_string(), "-iYI");
        assert!("".parse::<PhasedPauli>().is_err());
        assert!("-".parse::<PhasedPauli>().is_err());
        assert!("XQ".parse::<PhasedPauli>().is_err());
    }

    #[test]
    fn independence() {
        assert!(independent(&[]).unwrap());
        assert!(independent(&[p("X"), p("Z")]).unwrap());
        assert!(!independent(&[p("XI"), p("IX"), p("XX")]).unwrap());
        assert!(!independent(&[p("XI"), p("-II")]).unwrap());
        assert!(!independent(&[p("ZZ"), p("-ZZ")]).unwrap());
    }

    #[test]
    fn embedding() {
        assert_eq!(p("X").embed(&p("I")), p("XI"));
        assert_eq!(p("XZ").embed(&p("Y")), p("XZY"));
        assert_eq!(p("-X").embed(&p("iZ")), p("-iXZ"));
    }

    #[test]
    fn wide_registers() {
        let m = 130;
        let a = PhasedPauli::single(m, 129, Letter::X);
        let b = PhasedPauli::single(m, 129, Letter::Z);
        let c = PhasedPauli::single(m, 3, Letter::Z);
        assert!(!a.commutes(&b).unwrap());
        assert!(a.commutes(&c).unwrap());
        assert_eq!((&a * &b).phase(), Phase::MINUS_I);
        assert!(independent(&[a, b, c]).unwrap());
    }
}
