//! Prime-power finite fields GF(p^k) with a canonical defining modulus.
//!
//! Elements are coefficient vectors over the prime field, reduced modulo the
//! lexicographically least irreducible monic polynomial of degree k (see
//! [`canonical_modulus`]). The same (p, k) therefore always produces the same
//! field, and element encodings are stable across runs.

use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};

/// Default cap on the field size q = p^k.
pub const DEFAULT_MAX_Q: u64 = 1 << 20;

/// Reads the configured q-cap from `EQUICURVE_MAX_Q`, falling back to [`DEFAULT_MAX_Q`].
pub fn max_q() -> u64 {
    std::env::var("EQUICURVE_MAX_Q")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_Q)
}

/// Immutable description of GF(p^k): characteristic, degree, defining modulus.
pub struct FieldSpec {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible modulus of degree k over GF(p); coefficients ascending,
    /// length k+1, entries in [0, p). For k = 1 this is `x`, i.e. [0, 1].
    modulus: Vec<u64>,
    /// Embedding roots into larger fields, keyed by target (p, k'). The value is
    /// the encoding of the lexicographically least root of this field's modulus
    /// inside the target field.
    embeddings: RwLock<std::collections::BTreeMap<(u64, u32), u64>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

/// Cheap clonable handle to a [`FieldSpec`].
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is canonical, so (p, k) determines the field.
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}
impl Eq for Field {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// Constructs GF(p^k) with the canonical modulus. Checks the configured
    /// size bound.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::Parse("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q
                .checked_mul(p)
                .filter(|&v| v <= max_q())
                .ok_or_else(|| Error::BoundExceeded(format!("{}^{} exceeds max q", p, k)))?;
        }
        let modulus = canonical_modulus(p, k);
        Ok(Field(Arc::new(FieldSpec {
            p,
            k,
            q,
            modulus,
            embeddings: RwLock::new(Default::default()),
        })))
    }

    /// GF(p) itself.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// The extension GF(p^{k·d}) with its own canonical modulus.
    pub fn extension(&self, d: u32) -> Result<Field> {
        Field::new(self.0.p, self.0.k * d)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            c: vec![0; self.0.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Element from an integer, reduced mod p (negative values allowed).
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        let r = n.rem_euclid(p) as u64;
        let mut c = vec![0; self.0.k as usize];
        c[0] = r;
        FieldElement {
            field: self.clone(),
            c,
        }
    }

    /// Element from its canonical integer encoding sum c_i p^i, 0 <= enc < q.
    pub fn from_enc(&self, enc: u64) -> FieldElement {
        assert!(enc < self.0.q, "encoding out of range");
        let mut c = vec![0; self.0.k as usize];
        let mut n = enc;
        for ci in c.iter_mut() {
            *ci = n % self.0.p;
            n /= self.0.p;
        }
        FieldElement {
            field: self.clone(),
            c,
        }
    }

    /// Element from explicit coefficients (ascending powers of the generator),
    /// reduced mod p; shorter vectors are zero-padded.
    pub fn elt(&self, coeffs: &[i64]) -> FieldElement {
        assert!(coeffs.len() <= self.0.k as usize, "too many coefficients");
        let p = self.0.p as i64;
        let mut c = vec![0; self.0.k as usize];
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = v.rem_euclid(p) as u64;
        }
        FieldElement {
            field: self.clone(),
            c,
        }
    }

    /// All field elements in canonical encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |n| self.from_enc(n))
    }

    /// The generator of the polynomial basis (the class of x), zero for k = 1.
    pub fn gen(&self) -> FieldElement {
        if self.0.k == 1 {
            self.zero()
        } else {
            self.from_enc(self.0.p)
        }
    }

    /// Embeds `e` into `target` = GF(p^{k·d}). The image of the polynomial-basis
    /// generator is the lexicographically least root of this field's modulus in
    /// the target, so the embedding is deterministic.
    pub fn embed(&self, e: &FieldElement, target: &Field) -> Result<FieldElement> {
        assert_eq!(e.field, *self);
        if *self == *target {
            return Ok(e.clone());
        }
        if self.0.p != target.0.p || target.0.k % self.0.k != 0 {
            return Err(Error::Parse(format!(
                "no embedding GF({}^{}) -> GF({}^{})",
                self.0.p, self.0.k, target.0.p, target.0.k
            )));
        }
        if self.0.k == 1 {
            // Prime subfield: constants map to constants.
            return Ok(target.from_int(e.c[0] as i64));
        }
        let root = self.embedding_root(target)?;
        // Horner evaluation of the coefficient vector at the root.
        let mut acc = target.zero();
        for &ci in e.c.iter().rev() {
            acc = &(&acc * &root) + &target.from_int(ci as i64);
        }
        Ok(acc)
    }

    fn embedding_root(&self, target: &Field) -> Result<FieldElement> {
        let key = (target.0.p, target.0.k);
        if let Some(&enc) = self.0.embeddings.read().unwrap().get(&key) {
            return Ok(target.from_enc(enc));
        }
        // Find all roots of our modulus in the target and take the least.
        let modulus = crate::algebra::poly::Polynomial::from_ints(
            target,
            &self.0.modulus.iter().map(|&c| c as i64).collect::<Vec<_>>(),
        );
        let mut roots = crate::algebra::poly::roots(&modulus);
        roots.sort_by_key(|r| r.enc());
        let root = roots
            .into_iter()
            .next()
            .ok_or_else(|| Error::Parse("modulus has no root in target field".into()))?;
        self.0
            .embeddings
            .write()
            .unwrap()
            .insert(key, root.enc());
        Ok(root)
    }
}

/// An element of GF(p^k): k residues mod p, ascending powers of the generator.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    c: Vec<u64>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.enc())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.enc())
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// Canonical integer encoding sum c_i p^i. Orders elements deterministically.
    pub fn enc(&self) -> u64 {
        let p = self.field.p();
        self.c.iter().rev().fold(0u64, |acc, &ci| acc * p + ci)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&ci| ci == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&ci| ci == 0)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p = self.field.p();
        if self.field.k() == 1 {
            return Ok(FieldElement {
                field: self.field.clone(),
                c: vec![mod_inv(self.c[0], p)],
            });
        }
        // Extended Euclid in GF(p)[x] against the modulus.
        let (g, s, _) = poly_ext_gcd(&self.c, &self.field.0.modulus, p);
        debug_assert_eq!(g.len(), 1, "modulus is irreducible");
        let ginv = mod_inv(g[0], p);
        let mut c: Vec<u64> = s.iter().map(|&x| x * ginv % p).collect();
        c.resize(self.field.k() as usize, 0);
        Ok(FieldElement {
            field: self.field.clone(),
            c,
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.p())
    }

    /// True iff the element is a square. In characteristic 2 every element is.
    pub fn is_square(&self) -> bool {
        if self.field.p() == 2 || self.is_zero() {
            return true;
        }
        self.pow((self.field.q() - 1) / 2).is_one()
    }

    /// A square root, if one exists. Deterministic: of the pair {r, -r} the one
    /// with smaller encoding is returned.
    pub fn sqrt(&self) -> Option<FieldElement> {
        let q = self.field.q();
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.field.p() == 2 {
            // Squaring is bijective: sqrt(a) = a^(q/2).
            return Some(self.pow(q / 2));
        }
        if !self.is_square() {
            return None;
        }
        let r = self.tonelli_shanks();
        let neg = -&r;
        Some(if r.enc() <= neg.enc() { r } else { neg })
    }

    fn tonelli_shanks(&self) -> FieldElement {
        let q = self.field.q();
        let mut s = 0u32;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        if s == 1 {
            return self.pow((q + 1) / 4);
        }
        // Deterministic non-residue scan in encoding order.
        let z = self
            .field
            .elements()
            .find(|e| !e.is_zero() && !e.is_square())
            .expect("non-residue exists in odd characteristic");
        let mut m = s;
        let mut c = z.pow(t);
        let mut u = self.pow(t);
        let mut r = self.pow((t + 1) / 2);
        loop {
            if u.is_one() {
                return r;
            }
            let mut i = 0u32;
            let mut probe = u.clone();
            while !probe.is_one() {
                probe = &probe * &probe;
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = &b * &b;
            }
            m = i;
            c = &b * &b;
            u = &u * &c;
            r = &r * &b;
        }
    }

    /// Absolute trace to GF(2) as 0/1 (characteristic 2 only).
    pub fn trace2(&self) -> u64 {
        debug_assert_eq!(self.field.p(), 2);
        let mut acc = self.clone();
        let mut fr = self.clone();
        for _ in 1..self.field.k() {
            fr = &fr * &fr;
            acc = &acc + &fr;
        }
        acc.enc()
    }

    /// Solves w^2 + w = self over GF(2^k); `None` when the absolute trace is 1.
    /// Of the two solutions {w, w+1} the one with smaller encoding is returned.
    pub fn artin_schreier_solve(&self) -> Option<FieldElement> {
        debug_assert_eq!(self.field.p(), 2);
        if self.trace2() != 0 {
            return None;
        }
        let k = self.field.k() as usize;
        if k == 1 {
            // w^2 + w = 0 has solutions {0, 1}.
            return Some(self.field.zero());
        }
        // Solve the F2-linear system L(w) = self where L(w) = w^2 + w.
        // Columns of L in the polynomial basis:
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(k);
        for i in 0..k {
            let b = self.field.from_enc(1 << i);
            let img = &(&b * &b) + &b;
            cols.push(img.c.clone());
        }
        // Gaussian elimination on the k x (k+1) augmented system over F2.
        let mut rows: Vec<Vec<u64>> = (0..k)
            .map(|r| {
                let mut row: Vec<u64> = (0..k).map(|cix| cols[cix][r]).collect();
                row.push(self.c[r]);
                row
            })
            .collect();
        let mut pivot_of_col = vec![usize::MAX; k];
        let mut rank = 0;
        for col in 0..k {
            if let Some(pr) = (rank..k).find(|&r| rows[r][col] == 1) {
                rows.swap(rank, pr);
                for r in 0..k {
                    if r != rank && rows[r][col] == 1 {
                        for j in col..=k {
                            rows[r][j] ^= rows[rank][j];
                        }
                    }
                }
                pivot_of_col[col] = rank;
                rank += 1;
            }
        }
        // Consistency is guaranteed by the trace condition; free variables are 0.
        let mut w = vec![0u64; k];
        for col in 0..k {
            let pr = pivot_of_col[col];
            if pr != usize::MAX {
                w[col] = rows[pr][k];
            }
        }
        let cand = FieldElement {
            field: self.field.clone(),
            c: w,
        };
        debug_assert_eq!(&(&cand * &cand) + &cand, *self);
        let other = &cand + &self.field.one();
        Some(if cand.enc() <= other.enc() { cand } else { other })
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Extended Euclid on integers.
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "element not invertible");
    s0.rem_euclid(p as i64) as u64
}

// -- raw GF(p)[x] helpers used for modulus search and element inversion --

fn raw_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn raw_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    raw_trim(&mut out);
    out
}

fn raw_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        out[i] = (ai + p - bi) % p;
    }
    raw_trim(&mut out);
    out
}

fn raw_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    raw_trim(&mut r);
    let dm = m.len() - 1;
    let lc_inv = mod_inv(*m.last().unwrap(), p);
    while r.len() > dm {
        let c = *r.last().unwrap() * lc_inv % p;
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            let idx = i + shift;
            r[idx] = (r[idx] + p - c * mi % p) % p;
        }
        raw_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_ext_gcd(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    // gcd(a, m) = g = s*a + t*m over GF(p)[x].
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    raw_trim(&mut r0);
    raw_trim(&mut r1);
    let (mut s0, mut s1) = (vec![0u64], vec![1u64]);
    raw_trim(&mut s0);
    while !r1.is_empty() {
        // r0 = q*r1 + r
        let (q, r) = raw_divrem(&r0, &r1, p);
        let s = raw_sub(&s0, &raw_mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // Here gcd = r0 = s0*a + t*m for some t.
    // Normalize to monic gcd.
    let lc_inv = mod_inv(*r0.last().unwrap(), p);
    let g: Vec<u64> = r0.iter().map(|&c| c * lc_inv % p).collect();
    let s: Vec<u64> = s0.iter().map(|&c| c * lc_inv % p).collect();
    (g, s, vec![])
}

fn raw_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    raw_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![], r);
    }
    let lc_inv = mod_inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let c = *r.last().unwrap() * lc_inv % p;
        let shift = r.len() - 1 - db;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            let idx = i + shift;
            r[idx] = (r[idx] + p - c * bi % p) % p;
        }
        raw_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    raw_trim(&mut q);
    (q, r)
}

fn raw_powmod_x_q(m: &[u64], p: u64, e: u64) -> Vec<u64> {
    // x^(p^e') style powers: computes x^e mod m by square-and-multiply.
    let x = vec![0u64, 1];
    let mut base = raw_rem(&x, m, p);
    let mut acc = vec![1u64];
    let mut ee = e;
    while ee > 0 {
        if ee & 1 == 1 {
            acc = raw_rem(&raw_mul(&acc, &base, p), m, p);
        }
        base = raw_rem(&raw_mul(&base, &base, p), m, p);
        ee >>= 1;
    }
    acc
}

fn raw_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    raw_trim(&mut r0);
    raw_trim(&mut r1);
    while !r1.is_empty() {
        let (_, r) = raw_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
    }
    r0
}

/// Irreducibility over GF(p) by the Rabin test.
fn raw_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    // x^(p^k) == x mod f
    let mut pk: u64 = 1;
    for _ in 0..k {
        pk *= p;
    }
    let xq = raw_powmod_x_q(f, p, pk);
    let x = raw_rem(&[0, 1], f, p);
    if raw_sub(&xq, &x, p) != Vec::<u64>::new() {
        return false;
    }
    // gcd(x^(p^(k/r)) - x, f) = 1 for each prime r | k
    let mut rem_k = k;
    let mut primes = vec![];
    let mut d = 2;
    while d * d <= rem_k {
        if rem_k % d == 0 {
            primes.push(d);
            while rem_k % d == 0 {
                rem_k /= d;
            }
        }
        d += 1;
    }
    if rem_k > 1 {
        primes.push(rem_k);
    }
    for r in primes {
        let mut pe: u64 = 1;
        for _ in 0..(k / r) {
            pe *= p;
        }
        let xq = raw_powmod_x_q(f, p, pe);
        let diff = raw_sub(&xq, &x, p);
        let g = raw_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The lexicographically least monic irreducible of degree k over GF(p),
/// comparing coefficient sequences in ascending-degree order.
pub fn canonical_modulus(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1]; // x
    }
    let k = k as usize;
    let mut count: u64 = 1;
    for _ in 0..k {
        count = count.saturating_mul(p);
    }
    for n in 0..count {
        // Decode with c_0 as the most significant digit so the scan follows
        // lexicographic order on (c_0, c_1, ..., c_{k-1}).
        let mut cand = vec![0u64; k + 1];
        cand[k] = 1;
        let mut m = n;
        for i in (0..k).rev() {
            cand[i] = m % p;
            m /= p;
        }
        if raw_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials of every degree exist");
}

// -- operator impls --

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let p = self.field.p();
        let c = self
            .c
            .iter()
            .zip(&rhs.c)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElement {
            field: self.field.clone(),
            c,
        }
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let p = self.field.p();
        let c = self
            .c
            .iter()
            .zip(&rhs.c)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElement {
            field: self.field.clone(),
            c,
        }
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p();
        let c = self.c.iter().map(|&a| (p - a) % p).collect();
        FieldElement {
            field: self.field.clone(),
            c,
        }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let p = self.field.p();
        let k = self.field.k() as usize;
        if k == 1 {
            return FieldElement {
                field: self.field.clone(),
                c: vec![self.c[0] * rhs.c[0] % p],
            };
        }
        let prod = raw_mul(&self.c, &rhs.c, p);
        let mut c = raw_rem(&prod, &self.field.0.modulus, p);
        c.resize(k, 0);
        FieldElement {
            field: self.field.clone(),
            c,
        }
    }
}
