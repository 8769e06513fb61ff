#![allow(dead_code)]

use std::cmp::Ordering;

use arrowlab::colorings::Coloring;
use arrowlab::graphs::ColorGraph;
use arrowlab::ordinal::Ordinal;
use rand::Rng;

/// Reference Cantor normal form: terms with strictly decreasing exponents and
/// positive coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf(pub Vec<(Cnf, u64)>);

impl Cnf {
    pub fn nat(n: u64) -> Cnf {
        if n == 0 {
            Cnf(vec![])
        } else {
            Cnf(vec![(Cnf(vec![]), n)])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.0.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Polynomial form below ω^ω: `v[e]` is the coefficient of `ω^e`.
    pub fn from_poly(v: &[u64]) -> Cnf {
        Cnf(v
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c > 0)
            .map(|(e, &c)| (Cnf::nat(e as u64), c))
            .collect())
    }

    pub fn to_ordinal(&self) -> Ordinal {
        self.print().parse().unwrap()
    }

    /// Printed in the tool's normalized syntax.
    pub fn print(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(e, c)| {
                if e.is_zero() {
                    return c.to_string();
                }
                let base = match e.as_nat() {
                    Some(1) => "w".to_string(),
                    Some(k) => format!("w^{k}"),
                    None if e.0.len() == 1 && e.0[0].1 == 1 => format!("w^{}", e.print()),
                    None => format!("w^({})", e.print()),
                };
                if *c == 1 {
                    base
                } else {
                    format!("{base}*{c}")
                }
            })
            .collect();
        parts.join("+")
    }

    /// Always-parenthesized, spaced rendering that is still valid input.
    pub fn print_loose(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(e, c)| format!("ω ^ ( {} ) * {c}", e.print_loose()))
            .collect();
        parts.join(" + ")
    }
}

/// Term-by-term comparison.
pub fn cmp_ref(a: &Cnf, b: &Cnf) -> Ordering {
    for ((ea, ca), (eb, cb)) in a.0.iter().zip(&b.0) {
        match cmp_ref(ea, eb).then(ca.cmp(cb)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.0.len().cmp(&b.0.len())
}

/// Random normalized CNF with exponent nesting at most `depth`.
pub fn random_cnf<R: Rng>(rng: &mut R, depth: u32, max_terms: usize, max_coef: u64) -> Cnf {
    if depth == 0 {
        return Cnf::nat(rng.gen_range(0..=max_coef));
    }
    let k = rng.gen_range(0..=max_terms);
    let mut exps: Vec<Cnf> = (0..k)
        .map(|_| random_cnf(rng, depth - 1, max_terms, max_coef))
        .collect();
    exps.sort_by(|x, y| cmp_ref(y, x));
    exps.dedup();
    Cnf(exps
        .into_iter()
        .map(|e| (e, rng.gen_range(1..=max_coef.max(1))))
        .collect())
}

/// Random polynomial below ω^3 with coefficients up to `max_coef`.
pub fn random_below_w3<R: Rng>(rng: &mut R, max_coef: u64) -> Ordinal {
    let v = [
        rng.gen_range(0..=max_coef),
        rng.gen_range(0..=max_coef),
        rng.gen_range(0..=max_coef),
    ];
    Cnf::from_poly(&v).to_ordinal()
}

/// Random ordinal below ω^2.
pub fn random_below_w2<R: Rng>(rng: &mut R, max_coef: u64) -> Ordinal {
    Cnf::from_poly(&[rng.gen_range(0..=max_coef), rng.gen_range(0..=max_coef)]).to_ordinal()
}

/// `k` distinct sorted random ordinals produced by `gen`.
pub fn distinct_sorted<R: Rng>(
    rng: &mut R,
    k: usize,
    mut gen: impl FnMut(&mut R) -> Ordinal,
) -> Vec<Ordinal> {
    let mut out = std::collections::BTreeSet::new();
    let mut tries = 0;
    while out.len() < k && tries < 100 * k {
        out.insert(gen(rng));
        tries += 1;
    }
    out.into_iter().collect()
}

pub fn random_dense<R: Rng>(rng: &mut R, n: usize, arity: u64) -> Coloring {
    Coloring::from_fn(n, arity, |_, _| rng.gen_range(0..arity)).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> ColorGraph {
    let mut g = ColorGraph::new(n);
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn nats(v: &[u64]) -> Vec<Ordinal> {
    v.iter().map(|&k| Ordinal::from_nat(k)).collect()
}

pub const PENTAGON: &str =
    "arrowlab-coloring v1\nn=5 arity=2 domain=initial\n0\n1,0\n1,1,0\n0,1,1,0\n";
