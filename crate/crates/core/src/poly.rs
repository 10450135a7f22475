//! Internal dense univariate polynomial helpers over the rationals:
//! Euclidean division, gcd, Sturm chains, rational-root extraction,
//! real-root isolation, and the bivariate gcd / resultant built on top.
//!
//! These back the tangent-cone direction certificates and the isolatedness
//! witness; they are not part of the public surface.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::rational::Rational;

/// Dense univariate polynomial; invariant: no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct UPoly(pub Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.0.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        if self.0.len() <= 1 {
            return UPoly::zero();
        }
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * Rational::from_integer(BigInt::from(n)))
                .collect(),
        )
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        UPoly::new(out)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, k: &Rational) -> UPoly {
        if k.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|c| c * k).collect())
    }

    /// Euclidean division: `self = q * other + r` with `deg r < deg other`.
    pub fn div_rem(&self, other: &UPoly) -> (UPoly, UPoly) {
        let dd = other.degree().expect("division by zero polynomial");
        let lead = other.leading().unwrap().clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), UPoly::new(rem));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / &lead;
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (i, oc) in other.0.iter().enumerate() {
                rem[k + i] -= &c * oc;
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Exact division; panics if a remainder survives (used where exactness
    /// is guaranteed by construction, e.g. Bareiss elimination).
    pub fn div_exact(&self, other: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(other);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if let Some(l) = a.leading().cloned() {
            a = a.scale(&(Rational::one() / l));
        }
        a
    }

    /// Squarefree part: `self / gcd(self, self')`, made monic.
    pub fn squarefree(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_exact(&g)
    }
}

/// Sign of `p` at a rational point, as -1/0/1.
fn sign_at(p: &UPoly, x: &Rational) -> i32 {
    let v = p.eval(x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `p` at +infinity or -infinity.
fn sign_at_inf(p: &UPoly, positive: bool) -> i32 {
    match p.degree() {
        None => 0,
        Some(d) => {
            let l = p.leading().unwrap();
            let s = if l.is_positive() { 1 } else { -1 };
            if positive || d % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

/// Sturm chain of a squarefree polynomial.
pub(crate) struct Sturm {
    chain: Vec<UPoly>,
}

impl Sturm {
    pub fn new(p: &UPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        Sturm { chain }
    }

    fn variations<F: Fn(&UPoly) -> i32>(&self, sign: F) -> usize {
        let mut count = 0;
        let mut prev = 0;
        for p in &self.chain {
            let s = sign(p);
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn roots_in(&self, a: &Rational, b: &Rational) -> usize {
        let va = self.variations(|p| sign_at(p, a));
        let vb = self.variations(|p| sign_at(p, b));
        va.saturating_sub(vb)
    }

    pub fn roots_total(&self) -> usize {
        let va = self.variations(|p| sign_at_inf(p, false));
        let vb = self.variations(|p| sign_at_inf(p, true));
        va.saturating_sub(vb)
    }
}

/// Enumerate positive divisors of `n` (trial division; gives up above the
/// cap and returns `None`, which callers treat as "no rational-root search").
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![]);
    }
    if n.bits() > 40 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// All rational roots of `p` with multiplicities, found by the rational
/// root theorem on the integer-cleared polynomial, then deflation.
pub(crate) fn rational_roots(p: &UPoly) -> Vec<(Rational, u32)> {
    let mut out: Vec<(Rational, u32)> = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut work = p.clone();
    // Root at zero first.
    let mut zero_mult = 0;
    while !work.is_zero() && work.coeff(0).is_zero() {
        work = UPoly::new(work.0[1..].to_vec());
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((Rational::zero(), zero_mult));
    }
    if work.degree().unwrap_or(0) == 0 {
        return out;
    }
    // Clear denominators to an integer polynomial.
    let mut denom_lcm = BigInt::one();
    for c in &work.0 {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let int_coeffs: Vec<BigInt> = work
        .0
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let a0 = int_coeffs.first().cloned().unwrap_or_else(BigInt::zero);
    let an = int_coeffs.last().cloned().unwrap_or_else(BigInt::zero);
    let (p_divs, q_divs) = match (divisors(&a0), divisors(&an)) {
        (Some(p), Some(q)) => (p, q),
        _ => return out, // coefficients too large for candidate enumeration
    };
    let mut candidates = Vec::new();
    for pd in &p_divs {
        for qd in &q_divs {
            let r = Rational::new(pd.clone(), qd.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for cand in candidates {
        let mut mult = 0;
        while work.degree().unwrap_or(0) >= 1 && work.eval(&cand).is_zero() {
            // deflate by (x - cand)
            let divisor = UPoly::new(vec![-cand.clone(), Rational::one()]);
            work = work.div_exact(&divisor);
            mult += 1;
        }
        if mult > 0 {
            out.push((cand, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Isolating intervals `(lo, hi)` for the real roots of a polynomial with no
/// rational roots (callers deflate first). Intervals are disjoint, each
/// contains exactly one root, and endpoints are never roots.
pub(crate) fn isolate_irrational_roots(p: &UPoly) -> Vec<(Rational, Rational)> {
    let sq = p.squarefree();
    if sq.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = Sturm::new(&sq);
    let total = sturm.roots_total();
    if total == 0 {
        return Vec::new();
    }
    // Cauchy bound on root magnitude.
    let lead = sq.leading().unwrap().clone();
    let mut maxr = Rational::zero();
    for c in &sq.0 {
        let r = (c / &lead).abs();
        if r > maxr {
            maxr = r;
        }
    }
    let bound = maxr + Rational::one();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    let mut found = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.roots_in(&lo, &hi);
        if n == 0 {
            continue;
        }
        let width = &hi - &lo;
        if n == 1 && width < Rational::new(BigInt::one(), BigInt::from(8)) {
            found.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        // The input has no rational roots, so a rational midpoint is safe.
        debug_assert!(!sq.eval(&mid).is_zero());
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found
}

// ---------------------------------------------------------------------------
// Bivariate polynomials as polynomials in y with UPoly (in x) coefficients.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BPoly(pub Vec<UPoly>);

impl BPoly {
    pub fn new(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_y(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn eval_origin(&self) -> Rational {
        self.0
            .first()
            .map(|c| c.coeff(0))
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        match self.degree_y() {
            None => true,
            Some(0) => self.0[0].degree() == Some(0),
            _ => false,
        }
    }

    fn content(&self) -> UPoly {
        let mut g = UPoly::zero();
        for c in &self.0 {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c.clone() } else { g.gcd(c) };
            if g.degree() == Some(0) {
                return UPoly::constant(Rational::one());
            }
        }
        g
    }

    fn primitive(&self) -> BPoly {
        let c = self.content();
        if c.is_zero() || c.degree() == Some(0) {
            return self.clone();
        }
        BPoly::new(self.0.iter().map(|u| u.div_exact(&c)).collect())
    }

    fn mul_upoly(&self, k: &UPoly) -> BPoly {
        BPoly::new(self.0.iter().map(|u| u.mul(k)).collect())
    }

    /// Pseudo-remainder of `self` by `other` in y.
    fn pseudo_rem(&self, other: &BPoly) -> BPoly {
        let db = other.degree_y().expect("pseudo-division by zero");
        let lb = other.0[db].clone();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree_y() {
            if dr < db {
                break;
            }
            let lr = rem.0[dr].clone();
            // rem = lb * rem - lr * y^(dr-db) * other
            let mut shifted = vec![UPoly::zero(); dr - db];
            shifted.extend(other.0.iter().cloned());
            let shifted = BPoly::new(shifted).mul_upoly(&lr);
            rem = BPoly::new(
                rem.mul_upoly(&lb)
                    .0
                    .iter()
                    .enumerate()
                    .map(|(i, u)| u.sub(shifted.0.get(i).unwrap_or(&UPoly::zero())))
                    .collect(),
            );
            // degree must strictly drop
            if rem.degree_y() == Some(dr) {
                // numerical safety net; cannot happen with exact arithmetic
                break;
            }
        }
        rem
    }
}

/// Bivariate gcd over the rationals (primitive-part Euclid in y, contents in x).
pub(crate) fn gcd_bivariate(a: &BPoly, b: &BPoly) -> BPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    // Pure-x polynomials reduce to univariate gcds.
    if a.degree_y() == Some(0) && b.degree_y() == Some(0) {
        return BPoly::new(vec![a.0[0].gcd(&b.0[0])]);
    }
    let content_gcd = a.content().gcd(&b.content());
    let mut p = a.primitive();
    let mut q = b.primitive();
    if p.degree_y() < q.degree_y() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        if q.degree_y() == Some(0) {
            // A nontrivial x-polynomial cannot divide a primitive p; gcd in y is 1.
            return BPoly::new(vec![content_gcd]);
        }
        let r = p.pseudo_rem(&q).primitive();
        p = q;
        q = r;
    }
    let mut g = p.primitive().mul_upoly(&content_gcd);
    // Normalise the leading coefficient to a monic polynomial in x.
    if let Some(d) = g.degree_y() {
        if let Some(l) = g.0[d].leading().cloned() {
            g = g.mul_upoly(&UPoly::constant(Rational::one() / l));
        }
    }
    g
}

/// Resultant of `a`, `b` with respect to y: determinant of the Sylvester
/// matrix over Q[x], by fraction-free Bareiss elimination.
pub(crate) fn resultant_y(a: &BPoly, b: &BPoly) -> UPoly {
    let da = match a.degree_y() {
        Some(d) => d,
        None => return UPoly::zero(),
    };
    let db = match b.degree_y() {
        Some(d) => d,
        None => return UPoly::zero(),
    };
    if da == 0 && db == 0 {
        return UPoly::constant(Rational::one());
    }
    let n = da + db;
    let mut m: Vec<Vec<UPoly>> = vec![vec![UPoly::zero(); n]; n];
    for row in 0..db {
        for (k, c) in a.0.iter().enumerate() {
            m[row][row + da - k] = c.clone();
        }
    }
    for row in 0..da {
        for (k, c) in b.0.iter().enumerate() {
            m[db + row][row + db - k] = c.clone();
        }
    }
    // Bareiss
    let mut sign = 1i32;
    let mut prev = UPoly::constant(Rational::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|r| !m[*r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(coeffs: &[i64]) -> UPoly {
        UPoly::new(coeffs.iter().map(|c| rat_int(*c)).collect())
    }

    #[test]
    fn div_rem_basic() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, p(&[1, 1, 1]));
    }

    #[test]
    fn gcd_shared_factor() {
        let a = p(&[-1, 0, 1]); // x^2-1
        let b = p(&[1, 2, 1]); // (x+1)^2
        let g = a.gcd(&b);
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // x^2 (x - 1/2)^2 (x^2 + 1)
        let f = p(&[0, 0, 1])
            .mul(&UPoly::new(vec![rat(1, 4), rat_int(-1), rat_int(1)]))
            .mul(&p(&[1, 0, 1]));
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![(rat_int(0), 2), (rat(1, 2), 2)]);
    }

    #[test]
    fn sturm_counts_roots() {
        // (x^2 - 2)(x^2 - 3): four irrational real roots
        let f = p(&[-2, 0, 1]).mul(&p(&[-3, 0, 1]));
        let iv = isolate_irrational_roots(&f);
        assert_eq!(iv.len(), 4);
        for (lo, hi) in &iv {
            assert!(lo < hi);
        }
        // no real roots
        let g = p(&[1, 0, 1]);
        assert!(isolate_irrational_roots(&g).is_empty());
    }

    #[test]
    fn bivariate_gcd_common_factor() {
        // A = x*y, B = x*y^2 : gcd = x*y (up to normalisation)
        let a = BPoly::new(vec![UPoly::zero(), p(&[0, 1])]);
        let b = BPoly::new(vec![UPoly::zero(), UPoly::zero(), p(&[0, 1])]);
        let g = gcd_bivariate(&a, &b);
        assert_eq!(g.degree_y(), Some(1));
        assert!(g.0[0].is_zero());
        assert_eq!(g.0[1], p(&[0, 1]));
    }

    #[test]
    fn resultant_of_coprime() {
        // A = y^2 + x^4 (in y), B = y + x : resultant = x^2... substitute y=-x: x^2 + x^4
        let a = BPoly::new(vec![p(&[0, 0, 0, 0, 1]), UPoly::zero(), p(&[1])]);
        let b = BPoly::new(vec![p(&[0, 1]), p(&[1])]);
        let r = resultant_y(&a, &b);
        assert_eq!(r, p(&[0, 0, 1, 0, 1]));
    }
}
