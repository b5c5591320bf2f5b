//! Signed Pauli products in binary-symplectic form.
//!
//! A product is stored as two word-packed bit vectors, `x` and `z`, plus a
//! sign. Qubit `q` carries `I`, `X`, `Z` or `Y` for bit pairs `(0,0)`,
//! `(1,0)`, `(0,1)` and `(1,1)`. The `Y` letter is the Hermitian `Y`, so
//! every representable operator is Hermitian; products that pick up a factor
//! of `i` report it through the exponent returned by [`PauliProduct::mul`].

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn from_minus(minus: bool) -> Sign {
        if minus {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliProduct {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    sign: Sign,
}

impl PauliProduct {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliProduct {
            n,
            x: vec![0; w],
            z: vec![0; w],
            sign: Sign::Plus,
        }
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut out = Self::identity(n);
        out.set(qubit, p);
        out
    }

    pub fn x_on(n: usize, qubit: usize) -> Self {
        Self::single(n, qubit, Pauli::X)
    }

    pub fn z_on(n: usize, qubit: usize) -> Self {
        Self::single(n, qubit, Pauli::Z)
    }

    /// Builds a product from one letter per qubit.
    pub fn from_letters(sign: Sign, letters: &[Pauli]) -> Self {
        let mut out = Self::identity(letters.len());
        for (q, &p) in letters.iter().enumerate() {
            out.set(q, p);
        }
        out.sign = sign;
        out
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    pub fn negated(mut self) -> Self {
        self.sign = self.sign.flip();
        self
    }

    /// The same operator with sign `+`.
    pub fn unsigned(&self) -> Self {
        self.clone().with_sign(Sign::Plus)
    }

    pub fn x_bit(&self, q: usize) -> bool {
        debug_assert!(q < self.n);
        self.x[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        debug_assert!(q < self.n);
        self.z[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    /// Overwrites the letter on `q`. Panics if `q` is out of range.
    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (xb, zb) = p.bits();
        let mask = 1u64 << (q % WORD);
        let w = q / WORD;
        if xb {
            self.x[w] |= mask;
        } else {
            self.x[w] &= !mask;
        }
        if zb {
            self.z[w] |= mask;
        } else {
            self.z[w] &= !mask;
        }
    }

    pub(crate) fn set_bits(&mut self, q: usize, x: bool, z: bool) {
        self.set(q, Pauli::from_bits(x, z));
    }

    pub(crate) fn flip_sign_if(&mut self, cond: bool) {
        if cond {
            self.sign = self.sign.flip();
        }
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// True when every qubit carries `I`, regardless of sign.
    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Qubits where the product is not `I`.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&q| self.x_bit(q) || self.z_bit(q))
    }

    /// True when the two products agree up to sign.
    pub fn same_axis(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// True when no qubit carries `X` or `Y`.
    pub fn is_diagonal(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Symplectic commutation test; signs never matter.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        Ok(self.commutes_with(other))
    }

    /// [`commutes`](Self::commutes) without the dimension check.
    #[inline]
    pub fn commutes_with(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= (self.x[i] & other.z[i]).count_ones() ^ (self.z[i] & other.x[i]).count_ones();
        }
        parity & 1 == 0
    }

    /// Returns `(p, k)` with `self * other = i^k * p`, where `p` has sign `+`.
    pub fn mul(&self, other: &Self) -> Result<(PauliProduct, u8)> {
        self.check_dims(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> (PauliProduct, u8) {
        // Per qubit, write the Hermitian letter as i^{xz} X^x Z^z. Moving
        // Z^{z1} past X^{x2} costs (-1)^{z1 x2}; re-expressing the merged
        // X^{x3} Z^{z3} as a Hermitian letter costs i^{-x3 z3}.
        let w = self.x.len();
        let mut x = vec![0u64; w];
        let mut z = vec![0u64; w];
        let mut k: u32 = 0;
        for i in 0..w {
            let (x1, z1, x2, z2) = (self.x[i], self.z[i], other.x[i], other.z[i]);
            let (x3, z3) = (x1 ^ x2, z1 ^ z2);
            k += (x1 & z1).count_ones();
            k += (x2 & z2).count_ones();
            k += 2 * (z1 & x2).count_ones();
            k += 3 * (x3 & z3).count_ones();
            x[i] = x3;
            z[i] = z3;
        }
        if self.sign.is_minus() {
            k += 2;
        }
        if other.sign.is_minus() {
            k += 2;
        }
        let p = PauliProduct {
            n: self.n,
            x,
            z,
            sign: Sign::Plus,
        };
        (p, (k % 4) as u8)
    }

    /// The factor acting on `range`, with sign `+`.
    pub fn restrict(&self, range: Range<usize>) -> Result<PauliProduct> {
        if range.start > range.end || range.end > self.n {
            return Err(Error::OutOfRange {
                start: range.start,
                end: range.end,
                n: self.n,
            });
        }
        let mut out = PauliProduct::identity(range.len());
        for (i, q) in range.enumerate() {
            out.set(i, self.get(q));
        }
        Ok(out)
    }

    /// `self ⊗ other`, with the signs multiplied.
    pub fn tensor(&self, other: &Self) -> PauliProduct {
        let mut out = PauliProduct::identity(self.n + other.n);
        for q in 0..self.n {
            out.set(q, self.get(q));
        }
        for q in 0..other.n {
            out.set(self.n + q, other.get(q));
        }
        out.sign = Sign::from_minus(self.sign != other.sign);
        out
    }

    /// Pads with `I` on `extra` trailing qubits.
    pub fn extended(&self, extra: usize) -> PauliProduct {
        self.tensor(&PauliProduct::identity(extra))
    }

    /// Letters only, no sign.
    pub fn letters(&self) -> String {
        (0..self.n).map(|q| self.get(q).letter()).collect()
    }
}

/// Turns `i^k * p` into a signed Hermitian product, rejecting odd `k`.
pub(crate) fn hermitian_from_phase(p: PauliProduct, k: u8) -> Result<PauliProduct> {
    match k % 4 {
        0 => Ok(p),
        2 => Ok(p.negated()),
        _ => Err(Error::InvariantViolation(format!("anti-Hermitian product i^{k} * {p}"))),
    }
}

impl fmt::Display for PauliProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign.is_minus() { '-' } else { '+' };
        write!(f, "{s}{}", self.letters())
    }
}

impl fmt::Debug for PauliProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliProduct({self})")
    }
}

impl FromStr for PauliProduct {
    type Err = Error;

    /// Parses `"XIZ"`, `"+XIZ"` or `"-XIZ"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 0,
            message: format!("bad pauli string {s:?}: {msg}"),
        };
        let (sign, body) = match s.chars().next() {
            Some('-') | Some('−') => (Sign::Minus, &s[s.chars().next().unwrap().len_utf8()..]),
            Some('+') => (Sign::Plus, &s[1..]),
            _ => (Sign::Plus, s),
        };
        if body.is_empty() {
            return Err(bad("empty"));
        }
        let letters = body
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(bad("unknown letter")),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliProduct::from_letters(sign, &letters))
    }
}
