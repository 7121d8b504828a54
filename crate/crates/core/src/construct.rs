//! Standard group constructors.
//!
//! A [`ConstructorSpec`] is written as `kind` or `kind:a,b,...`, for
//! example `cyclic:8`, `direct-product:2,2,4`, `dihedral:4`,
//! `quaternion8`, `heisenberg:3`, `semidirect-pq:7,3,2`,
//! `semidirect:3,4,2`, `dicyclic:3`, `sym:4`, `alt:5`,
//! `tight-family:64,3`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::numth::{is_prime, next_prime_at_least};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructorSpec {
    Cyclic(usize),
    DirectProduct(Vec<usize>),
    Dihedral(usize),
    Quaternion8,
    Dicyclic(usize),
    Heisenberg(usize),
    SemidirectPq { p: usize, q: usize, t: usize },
    Semidirect { m: usize, k: usize, t: usize },
    Sym(usize),
    Alt(usize),
    TightFamily { n: usize, p: usize },
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

impl FromStr for ConstructorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<usize> = if rest.trim().is_empty() {
            vec![]
        } else {
            rest.split(',')
                .map(|a| a.trim().parse::<usize>().map_err(|_| bad(format!("bad integer '{a}' in '{s}'"))))
                .collect::<Result<_>>()?
        };
        let want = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(bad(format!("'{kind}' takes {k} parameter(s), got {}", args.len())))
            }
        };
        Ok(match kind.trim() {
            "cyclic" => {
                want(1)?;
                ConstructorSpec::Cyclic(args[0])
            }
            "direct-product" => {
                if args.is_empty() {
                    return Err(bad("direct-product needs at least one factor"));
                }
                ConstructorSpec::DirectProduct(args)
            }
            "dihedral" => {
                want(1)?;
                ConstructorSpec::Dihedral(args[0])
            }
            "quaternion8" => {
                want(0)?;
                ConstructorSpec::Quaternion8
            }
            "dicyclic" => {
                want(1)?;
                ConstructorSpec::Dicyclic(args[0])
            }
            "heisenberg" => {
                want(1)?;
                ConstructorSpec::Heisenberg(args[0])
            }
            "semidirect-pq" => {
                want(3)?;
                ConstructorSpec::SemidirectPq { p: args[0], q: args[1], t: args[2] }
            }
            "semidirect" => {
                want(3)?;
                ConstructorSpec::Semidirect { m: args[0], k: args[1], t: args[2] }
            }
            "sym" => {
                want(1)?;
                ConstructorSpec::Sym(args[0])
            }
            "alt" => {
                want(1)?;
                ConstructorSpec::Alt(args[0])
            }
            "tight-family" => {
                want(2)?;
                ConstructorSpec::TightFamily { n: args[0], p: args[1] }
            }
            other => return Err(bad(format!("unknown group kind '{other}'"))),
        })
    }
}

impl fmt::Display for ConstructorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstructorSpec::*;
        match self {
            Cyclic(n) => write!(f, "cyclic:{n}"),
            DirectProduct(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "direct-product:{}", s.join(","))
            }
            Dihedral(k) => write!(f, "dihedral:{k}"),
            Quaternion8 => write!(f, "quaternion8"),
            Dicyclic(k) => write!(f, "dicyclic:{k}"),
            Heisenberg(p) => write!(f, "heisenberg:{p}"),
            SemidirectPq { p, q, t } => write!(f, "semidirect-pq:{p},{q},{t}"),
            Semidirect { m, k, t } => write!(f, "semidirect:{m},{k},{t}"),
            Sym(k) => write!(f, "sym:{k}"),
            Alt(k) => write!(f, "alt:{k}"),
            TightFamily { n, p } => write!(f, "tight-family:{n},{p}"),
        }
    }
}

impl ConstructorSpec {
    pub fn build(&self) -> Result<GroupTable> {
        construct(self)
    }
}

fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> GroupTable {
    let mut t = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            t[a * n + b] = f(a, b) as u32;
        }
    }
    GroupTable::trusted(n, t)
}

pub fn cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(bad("cyclic order must be positive"));
    }
    Ok(from_fn(n, |a, b| (a + b) % n))
}

/// `Z_{a_1} x ... x Z_{a_k}` with mixed-radix ids, first factor most
/// significant.
pub fn abelian(orders: &[usize]) -> Result<GroupTable> {
    let mut g = cyclic(1)?;
    for &a in orders {
        g = g.direct_product(&cyclic(a)?);
    }
    Ok(g)
}

fn pow_mod(t: usize, e: usize, m: usize) -> usize {
    (0..e).fold(1 % m, |acc, _| acc * t % m)
}

/// `Z_m x| Z_k` where the generator of `Z_k` acts by `x -> t x`.
/// The pair `(a, b)` has id `b * m + a`.
pub fn semidirect(m: usize, k: usize, t: usize) -> Result<GroupTable> {
    if m == 0 || k == 0 {
        return Err(bad("semidirect factors must be positive"));
    }
    let t = t % m;
    if gcd(t, m) != 1 && m > 1 {
        return Err(bad(format!("{t} is not a unit mod {m}")));
    }
    if pow_mod(t, k, m) != 1 % m {
        return Err(bad(format!("{t}^{k} is not 1 mod {m}")));
    }
    let pw: Vec<usize> = (0..k).map(|e| pow_mod(t, e, m)).collect();
    Ok(from_fn(m * k, |x, y| {
        let (a1, b1) = (x % m, x / m);
        let (a2, b2) = (y % m, y / m);
        ((b1 + b2) % k) * m + (a1 + pw[b1] * a2) % m
    }))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Dihedral group of order `2k`.
pub fn dihedral(k: usize) -> Result<GroupTable> {
    if k == 0 {
        return Err(bad("dihedral parameter must be positive"));
    }
    semidirect(k, 2, k - 1)
}

/// Dicyclic group of order `4k`: `<a, x | a^{2k}, x^2 = a^k, x a x^-1 = a^-1>`.
/// `a^i x^j` has id `j * 2k + i`.
pub fn dicyclic(k: usize) -> Result<GroupTable> {
    if k == 0 {
        return Err(bad("dicyclic parameter must be positive"));
    }
    let m = 2 * k;
    Ok(from_fn(2 * m, |x, y| {
        let (i, j) = (x % m, x / m);
        let (i2, j2) = (y % m, y / m);
        let moved = if j == 1 { (m - i2) % m } else { i2 };
        let extra = if j == 1 && j2 == 1 { k } else { 0 };
        ((j + j2) % 2) * m + (i + moved + extra) % m
    }))
}

/// Upper unitriangular 3x3 matrices over `F_p`; `(a, b, c)` has id
/// `a p^2 + b p + c`.
pub fn heisenberg(p: usize) -> Result<GroupTable> {
    if !is_prime(p) {
        return Err(bad(format!("heisenberg needs a prime, got {p}")));
    }
    let dec = |x: usize| (x / (p * p), (x / p) % p, x % p);
    Ok(from_fn(p * p * p, |x, y| {
        let (a, b, c) = dec(x);
        let (a2, b2, c2) = dec(y);
        ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
    }))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

fn perm_group(perms: Vec<Vec<usize>>) -> GroupTable {
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    from_fn(perms.len(), |a, b| {
        let c: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
        index[&c]
    })
}

/// Symmetric group on `k` points, permutations in lexicographic order.
pub fn sym(k: usize) -> Result<GroupTable> {
    if k == 0 || k > 6 {
        return Err(bad("sym degree must be in 1..=6"));
    }
    Ok(perm_group(permutations(k)))
}

/// Alternating group on `k` points, even permutations in lexicographic order.
pub fn alt(k: usize) -> Result<GroupTable> {
    if k == 0 || k > 7 {
        return Err(bad("alt degree must be in 1..=7"));
    }
    Ok(perm_group(permutations(k).into_iter().filter(|p| is_even(p)).collect()))
}

/// Parameters of the abelian family `Z_p^k x Z_q x Z_d` near order `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TightParams {
    pub p: usize,
    pub k: usize,
    pub q: usize,
    pub d: usize,
}

impl TightParams {
    pub fn order(&self) -> usize {
        self.p.pow(self.k as u32) * self.q * self.d
    }
}

/// `q` is the smallest prime in `[L/(2 log L), L/log L)` with `L = log2 n`,
/// searching upward when the window holds no prime; `k` rounds
/// `log_p(n / log2 n)` and `d` rounds `n / (p^k q)`.
pub fn tight_params(n: usize, p: usize) -> Result<TightParams> {
    if !is_prime(p) || n < 4 {
        return Err(bad("tight-family needs a prime p and n >= 4"));
    }
    let l = (n as f64).log2();
    let hi = if l > 2.0 { l / l.log2() } else { 2.0 };
    let lo = hi / 2.0;
    let q = next_prime_at_least(lo.ceil() as usize);
    let k = ((n as f64 / l).ln() / (p as f64).ln()).round().max(1.0) as usize;
    let d = ((n as f64) / (p.pow(k as u32) as f64 * q as f64)).round().max(1.0) as usize;
    Ok(TightParams { p, k, q, d })
}

pub fn tight_family(n: usize, p: usize) -> Result<GroupTable> {
    let t = tight_params(n, p)?;
    let mut orders = vec![t.p; t.k];
    orders.push(t.q);
    orders.push(t.d);
    abelian(&orders)
}

pub fn construct(spec: &ConstructorSpec) -> Result<GroupTable> {
    use ConstructorSpec::*;
    match spec {
        Cyclic(n) => cyclic(*n),
        DirectProduct(v) => abelian(v),
        Dihedral(k) => dihedral(*k),
        Quaternion8 => dicyclic(2),
        Dicyclic(k) => dicyclic(*k),
        Heisenberg(p) => heisenberg(*p),
        SemidirectPq { p, q, t } => {
            if !is_prime(*p) || !is_prime(*q) || (*p - 1) % *q != 0 {
                return Err(bad(format!("semidirect-pq needs primes with {q} | {p} - 1")));
            }
            if *t % *p <= 1 {
                return Err(bad("semidirect-pq needs a nontrivial action"));
            }
            semidirect(*p, *q, *t)
        }
        Semidirect { m, k, t } => semidirect(*m, *k, *t),
        Sym(k) => sym(*k),
        Alt(k) => alt(*k),
        TightFamily { n, p } => tight_family(*n, *p),
    }
}
