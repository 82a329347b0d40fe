//! Prime fields' polynomial helpers and the GF(p^k) element encoding.
//!
//! An element of GF(p^k) with coefficients `c_0 + c_1 t + ... + c_{k-1} t^{k-1}`
//! is stored as the index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p.
fn rem_monic(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap() % p as u64;
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let sub = lead * c as u64 % p as u64;
                r[shift + i] = (r[shift + i] + p as u64 - sub) % p as u64;
            }
        }
    }
    trim(r.into_iter().map(|c| (c % p as u64) as u32).collect())
}

/// Validates a degree-`k` modulus: correct degree, irreducible over F_p.
/// Returns the monic normalization.
pub fn normalize_modulus(p: u32, k: u32, poly: &[u32]) -> Option<Vec<u32>> {
    let poly = trim(poly.iter().map(|&c| c % p).collect());
    if poly.len() != k as usize + 1 {
        return None;
    }
    let lead_inv = inv_mod(poly[k as usize], p);
    let monic: Vec<u32> = poly
        .iter()
        .map(|&c| ((c as u64 * lead_inv as u64) % p as u64) as u32)
        .collect();
    is_irreducible(p, &monic).then_some(monic)
}

/// Exhaustive factor check: no monic polynomial of degree 1..=k/2 divides.
pub fn is_irreducible(p: u32, monic: &[u32]) -> bool {
    let k = monic.len() - 1;
    if k == 0 {
        return false;
    }
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut factor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                factor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            factor.push(1);
            if rem_monic(p, monic, &factor).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically first monic irreducible polynomial of degree `k`.
pub fn first_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut poly = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        if is_irreducible(p, &poly) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Arithmetic of GF(p^k) on element indices.
#[derive(Clone, Debug)]
pub struct GfField {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
    order: usize,
}

impl GfField {
    pub fn new(p: u32, k: u32, modulus: Vec<u32>) -> Self {
        GfField {
            p,
            k,
            modulus,
            order: (p as usize).pow(k),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn digits(&self, mut a: usize) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            d.push((a % self.p as usize) as u32);
            a /= self.p as usize;
        }
        d
    }

    pub fn encode(&self, digits: &[u32]) -> usize {
        digits
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let p = self.p as usize;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let p = self.p as usize;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.k as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut r = rem_monic(self.p, &prod, &self.modulus);
        r.resize(self.k as usize, 0);
        self.encode(&r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(2, &[1, 1, 1]));
        assert!(!is_irreducible(2, &[1, 0, 1]));
        assert!(is_irreducible(3, &[1, 0, 1]));
        assert!(!is_irreducible(5, &[1, 0, 1])); // 2^2 = -1 mod 5
        assert!(is_irreducible(2, &[1, 1, 0, 0, 1]));
        assert!(!is_irreducible(2, &[1, 0, 1, 0, 1])); // (x^2+x+1)^2
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(first_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_modulus(3, 2, &[2, 0, 2]), Some(vec![1, 0, 1]));
        assert_eq!(normalize_modulus(2, 3, &[1, 1, 1]), None);
    }

    #[test]
    fn gf4_multiplication() {
        // t^2 = t + 1
        let f = GfField::new(2, 2, vec![1, 1, 1]);
        let t = 2;
        assert_eq!(f.mul(t, t), 3);
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.mul(t, 3), 1);
        assert_eq!(f.add(3, 1), 2);
        assert_eq!(f.neg(3), 3);
    }
}
