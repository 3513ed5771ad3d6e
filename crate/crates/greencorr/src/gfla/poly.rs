use rand::Rng;

use super::{add, inv, mul, neg, sub};

/// Univariate polynomial over GF(p); `coeffs[i]` multiplies `x^i`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    p: u32,
    c: Vec<u32>,
}

impl Poly {
    pub fn new(p: u32, mut c: Vec<u32>) -> Self {
        c.iter_mut().for_each(|v| *v %= p);
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, c }
    }

    pub fn zero(p: u32) -> Self {
        Poly { p, c: Vec::new() }
    }
    pub fn one(p: u32) -> Self {
        Poly::new(p, vec![1])
    }
    pub fn x(p: u32) -> Self {
        Poly::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c == [1]
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }
    pub fn lead(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv(self.lead(), self.p))
    }

    pub fn scale(&self, s: u32) -> Poly {
        Poly::new(self.p, self.c.iter().map(|&a| mul(a, s, self.p)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let g = |v: &Vec<u32>, i: usize| v.get(i).copied().unwrap_or(0);
        Poly::new(self.p, (0..n).map(|i| add(g(&self.c, i), g(&o.c, i), self.p)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let g = |v: &Vec<u32>, i: usize| v.get(i).copied().unwrap_or(0);
        Poly::new(self.p, (0..n).map(|i| sub(g(&self.c, i), g(&o.c, i), self.p)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Poly::new(self.p, acc.into_iter().map(|v| v as u32).collect())
    }

    /// Quotient and remainder. Panics if `d` is zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (Poly::zero(p), self.clone());
        }
        let dl = inv(d.lead(), p);
        let dd = d.deg();
        let mut r = self.c.clone();
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = mul(r[k + dd], dl, p);
            q[k] = f;
            if f == 0 {
                continue;
            }
            let nf = neg(f, p);
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = add(r[k + j], mul(nf, b, p), p);
            }
        }
        r.truncate(dd);
        (Poly::new(p, q), Poly::new(p, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact division; panics if `d` does not divide.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let p = self.p;
        Poly::new(p, self.c.iter().enumerate().skip(1).map(|(i, &a)| mul(a, (i as u64 % p as u64) as u32, p)).collect())
    }

    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut r = Poly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        r
    }

    /// `self^(p^k) mod m`.
    fn frobenius(&self, k: usize, m: &Poly) -> Poly {
        let mut r = self.rem(m);
        for _ in 0..k {
            r = r.powmod(self.p as u64, m);
        }
        r
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.c.iter().rev().fold(0, |acc, &a| add(mul(acc, x, self.p), a, self.p))
    }

    /// Irreducibility via Rabin's test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = Poly::x(self.p);
        if !x.frobenius(n, &f).sub(&x).rem(&f).is_zero() {
            return false;
        }
        prime_factors(n).into_iter().all(|r| {
            let h = x.frobenius(n / r, &f).sub(&x);
            f.gcd(&h).is_one()
        })
    }

    /// Square-free decomposition: pairwise coprime monic square-free `(g, m)` with `f = lc * prod g^m`.
    pub fn squarefree(&self) -> Vec<(Poly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let mut c = f.gcd(&d);
        let mut w = f.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w);
        }
        if !c.is_one() {
            // c is a polynomial in x^p; a^p = a in GF(p)
            let root = Poly::new(p, c.c.iter().step_by(p as usize).copied().collect());
            for (g, m) in root.squarefree() {
                out.push((g, m * p as usize));
            }
        }
        merge_factors(out)
    }

    /// Full factorisation into monic irreducibles with multiplicities, sorted.
    pub fn factor<R: Rng>(&self, rng: &mut R) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        for (g, m) in self.squarefree() {
            for (h, d) in distinct_degree(&g) {
                for q in equal_degree(&h, d, rng) {
                    out.push((q, m));
                }
            }
        }
        merge_factors(out)
    }
}

fn merge_factors(mut v: Vec<(Poly, usize)>) -> Vec<(Poly, usize)> {
    v.sort_by(|a, b| a.0.c.len().cmp(&b.0.c.len()).then_with(|| a.0.c.cmp(&b.0.c)));
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, m) in v {
        match out.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => out.push((g, m)),
        }
    }
    out
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a monic square-free polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.p;
    let x = Poly::x(p);
    let mut g = f.clone();
    let mut h = x.rem(&g);
    let mut out = Vec::new();
    let mut i = 1;
    while g.degree().unwrap_or(0) >= 2 * i {
        h = h.powmod(p as u64, &g);
        let d = g.gcd(&h.sub(&x));
        if !d.is_one() {
            g = g.div_exact(&d);
            h = h.rem(&g);
            out.push((d, i));
        }
        i += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        let d = g.deg();
        out.push((g, d));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree<R: Rng>(f: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let p = f.p;
    loop {
        let a = Poly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut s = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                s = s.add(&t);
            }
            s
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut t = a.rem(f);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.powmod(p as u64, f);
                norm = norm.mul(&t).rem(f);
            }
            norm.powmod(((p - 1) / 2) as u64, f).sub(&Poly::one(p))
        };
        let g = f.gcd(&b);
        if g.is_one() || g.deg() == n {
            continue;
        }
        let h = f.div_exact(&g);
        let mut out = equal_degree(&g, d, rng);
        out.extend(equal_degree(&h, d, rng));
        return out;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pl(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    /// Irreducibility by trial division over all monic polynomials of lower degree.
    fn irreducible_brute(f: &Poly) -> bool {
        let p = f.p();
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            let count = (p as usize).pow(d as u32);
            for k in 0..count {
                let mut c = Vec::with_capacity(d + 1);
                let mut k = k;
                for _ in 0..d {
                    c.push((k % p as usize) as u32);
                    k /= p as usize;
                }
                c.push(1);
                if f.rem(&Poly::new(p, c)).is_zero() {
                    return false;
                }
            }
        }
        n >= 1
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for p in [2u32, 3, 5] {
            let limit = if p == 2 { 6 } else { 4 };
            for deg in 1..=limit {
                let count = (p as usize).pow(deg as u32);
                for k in 0..count {
                    let mut c = Vec::new();
                    let mut k = k;
                    for _ in 0..deg {
                        c.push((k % p as usize) as u32);
                        k /= p as usize;
                    }
                    c.push(1);
                    let f = Poly::new(p, c);
                    assert_eq!(f.is_irreducible(), irreducible_brute(&f), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn factor_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // (x+1)^2 (x^2+x+1) x^4 over GF(2)
        let p = 2;
        let f = pl(p, &[1, 1]).mul(&pl(p, &[1, 1])).mul(&pl(p, &[1, 1, 1])).mul(&pl(p, &[0, 0, 0, 0, 1]));
        let fac = f.factor(&mut rng);
        assert_eq!(fac.len(), 3);
        let mut prod = Poly::one(p);
        for (g, m) in &fac {
            assert!(g.is_irreducible());
            for _ in 0..*m {
                prod = prod.mul(g);
            }
        }
        assert_eq!(prod, f);
        // x^3 - 1 = (x-1)^3 over GF(3)
        assert_eq!(pl(3, &[2, 0, 0, 1]).factor(&mut rng), vec![(pl(3, &[2, 1]), 3)]);
        // x^4 - 1 splits into four linear factors over GF(5)
        assert_eq!(pl(5, &[4, 0, 0, 0, 1]).factor(&mut rng).len(), 4);
    }

    #[test]
    fn gcd_and_division() {
        let a = pl(7, &[6, 0, 1]); // x^2 - 1
        let b = pl(7, &[1, 1]); // x + 1
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, pl(7, &[6, 1]));
        assert!(r.is_zero());
        assert_eq!(pl(3, &[0, 0, 0, 1]).derivative(), Poly::zero(3));
    }
}
