//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use strata::flatgeom::ChartData;
use strata::hurwitz::{exists_tuple, Guard};
use strata::{Partition, RamificationProfile};

/// A random connected chart with `1..=max_poles` non-simple poles and up to
/// two simple poles of each sign.
pub fn random_chart<R: Rng>(rng: &mut R, max_poles: usize) -> ChartData {
    loop {
        let r = rng.gen_range(1..=max_poles);
        let mut dvec = vec![0];
        for _ in 0..r {
            let last = *dvec.last().unwrap();
            dvec.push(last + rng.gen_range(1..=2));
        }
        let d = *dvec.last().unwrap();
        let splus = rng.gen_range(0..=2);
        let sminus = rng.gen_range(0..=2);
        let n = rng.gen_range(splus.max(sminus).max(1)..=8);
        let mut pit: Vec<usize> = (1..=n).collect();
        let mut pib = pit.clone();
        pit.shuffle(rng);
        pib.shuffle(rng);
        let chart = ChartData {
            n,
            nplus: cuts(rng, d, splus, n),
            nminus: cuts(rng, d, sminus, n),
            pit,
            pib,
            dvec,
            splus,
            sminus,
        };
        if chart.validate().is_ok() {
            return chart;
        }
    }
}

/// `d` nondecreasing cuts followed by `s` strictly increasing ones, ending at `n`.
fn cuts<R: Rng>(rng: &mut R, d: usize, s: usize, n: usize) -> Vec<usize> {
    let (head_max, tail) = if s == 0 {
        (n, vec![])
    } else {
        let mut t: Vec<usize> = index::sample(rng, n - 1, s - 1).into_iter().map(|x| x + 1).collect();
        t.push(n);
        t.sort_unstable();
        (t[0] - 1, t)
    };
    let mut head: Vec<usize> = (0..d).map(|_| rng.gen_range(0..=head_max)).collect();
    head.sort_unstable();
    if s == 0 {
        if let Some(last) = head.last_mut() {
            *last = n;
        }
    }
    head.extend(tail);
    head
}

/// All multisets of `len` integers in `lo..=hi` summing to `sum`, sorted.
pub fn multisets(len: usize, lo: i64, hi: i64, sum: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, lo: i64, hi: i64, sum: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let left = (len - cur.len()) as i64;
        for x in lo..=hi {
            // the remaining entries are at least x and at most hi
            if sum - x < x * (left - 1) || sum - x > hi * (left - 1) {
                continue;
            }
            cur.push(x);
            go(len, x, hi, sum - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, lo, hi, sum, &mut Vec::new(), &mut out);
    out
}

/// How the existence of a genus-zero differential with vanishing residues
/// at the non-simple poles was decided.
#[derive(Clone, Debug, PartialEq)]
pub enum Existence {
    /// The residue theorem forces the lone simple pole to have residue zero.
    LoneSimplePole,
    /// An exact differential `df` would need a critical point of local
    /// degree larger than `deg f`.
    LocalDegree,
    /// Monodromy search for `f` with `df` of this type.
    Cover(bool),
    /// Positions of the points found by Newton iteration, the last one at
    /// infinity; `None` when every start failed.
    Numeric(Option<Vec<Complex64>>),
}

impl Existence {
    pub fn exists(&self) -> bool {
        match self {
            Existence::LoneSimplePole | Existence::LocalDegree => false,
            Existence::Cover(b) => *b,
            Existence::Numeric(x) => x.is_some(),
        }
    }
}

/// Decides whether `ω = ∏ (z - z_j)^{κ_j} dz` can be arranged with zero
/// residue at every pole of order at least two, for a genus-zero `κ`.
pub fn genus_zero_existence<R: Rng>(kappa: &[i64], rng: &mut R) -> Existence {
    let simple = kappa.iter().filter(|&&k| k == -1).count();
    if simple == 1 {
        return Existence::LoneSimplePole;
    }
    if simple == 0 {
        // zero residues everywhere: ω = df for f of degree Σ (p_j - 1)
        let poles: Vec<u32> = kappa.iter().filter(|&&k| k < 0).map(|&k| (-k - 1) as u32).collect();
        let degree: u32 = poles.iter().sum();
        let zeros: Vec<u32> = kappa.iter().filter(|&&k| k > 0).map(|&k| k as u32).collect();
        if zeros.iter().any(|&a| a + 1 > degree) {
            return Existence::LocalDegree;
        }
        let mut parts = vec![Partition::new(poles)];
        for a in zeros {
            let mut p = vec![a + 1];
            p.extend(std::iter::repeat_n(1, (degree - a - 1) as usize));
            parts.push(Partition::new(p));
        }
        let profile = RamificationProfile::new(degree, parts).expect("Riemann-Hurwitz holds in genus zero");
        let guard = Guard { max_degree: 12, max_points: 10 };
        return Existence::Cover(exists_tuple(&profile, guard).expect("within guard"));
    }
    Existence::Numeric(newton_search(kappa, rng, 400))
}

/// `(c + t)^k` as a power series in `t` up to `t^len`.
fn binomial_series(c: Complex64, k: i64, len: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(len + 1);
    let mut coeff = c.powi(k as i32);
    for r in 0..=len {
        out.push(coeff);
        coeff = coeff * Complex64::new((k - r as i64) as f64 / (r as f64 + 1.0), 0.0) / c;
    }
    out
}

fn residue(kappa: &[i64], z: &[Complex64], i: usize) -> Complex64 {
    let p = (-kappa[i]) as usize;
    let mut series = vec![Complex64::new(0.0, 0.0); p];
    series[0] = Complex64::new(1.0, 0.0);
    for (j, &zj) in z.iter().enumerate() {
        if j == i || kappa[j] == 0 {
            continue;
        }
        let f = binomial_series(z[i] - zj, kappa[j], p - 1);
        let mut next = vec![Complex64::new(0.0, 0.0); p];
        for (a, x) in series.iter().enumerate() {
            for (b, y) in f.iter().enumerate().take(p - a) {
                next[a + b] += x * y;
            }
        }
        series = next;
    }
    series[p - 1]
}

/// Newton iteration with minimum-norm steps. The last entry of `kappa` that
/// is a simple pole is sent to infinity and two finite points are fixed at
/// `0` and `1`; the unknowns are the remaining finite points.
fn newton_search<R: Rng>(kappa: &[i64], rng: &mut R, starts: usize) -> Option<Vec<Complex64>> {
    let inf = kappa.iter().rposition(|&k| k == -1)?;
    let finite: Vec<i64> = kappa.iter().enumerate().filter(|&(j, _)| j != inf).map(|(_, &k)| k).collect();
    let poles: Vec<usize> = (0..finite.len()).filter(|&j| finite[j] <= -2).collect();
    let unknowns = finite.len() - 2;
    let eval = |z: &[Complex64]| DVector::from_iterator(poles.len(), poles.iter().map(|&i| residue(&finite, z, i)));
    let assemble = |u: &DVector<Complex64>| {
        let mut z = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        z.extend(u.iter().copied());
        z
    };
    let separated = |z: &[Complex64]| {
        z.iter().all(|x| x.norm() < 1e4)
            && (0..z.len()).all(|a| (a + 1..z.len()).all(|b| (z[a] - z[b]).norm() > 1e-4))
    };
    if unknowns == 0 {
        let z = assemble(&DVector::zeros(0));
        return (separated(&z) && eval(&z).norm() < 1e-9).then(|| {
            let mut full = z;
            full.insert(inf, Complex64::new(f64::INFINITY, 0.0));
            full
        });
    }
    for _ in 0..starts {
        let mut u = DVector::from_fn(unknowns, |_, _| {
            Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
        });
        for _ in 0..80 {
            let z = assemble(&u);
            let f = eval(&z);
            if f.norm() < 1e-11 {
                break;
            }
            let h = 1e-7;
            let mut jac = DMatrix::zeros(poles.len(), unknowns);
            for c in 0..unknowns {
                let mut v = u.clone();
                v[c] += Complex64::new(h, 0.0);
                let df = (eval(&assemble(&v)) - &f) / Complex64::new(h, 0.0);
                jac.set_column(c, &df);
            }
            let Ok(step) = jac.svd(true, true).solve(&(-&f), 1e-12) else { break };
            u += step;
            if !u.iter().all(|x| x.is_finite()) {
                break;
            }
        }
        let z = assemble(&u);
        if separated(&z) && eval(&z).norm() < 1e-9 {
            let mut full = z;
            full.insert(inf, Complex64::new(f64::INFINITY, 0.0));
            return Some(full);
        }
    }
    None
}
