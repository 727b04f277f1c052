//! Reference data files and their checks, shared by `strata selftest` and
//! the acceptance suite. Each file is one JSON object tagged by `kind`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::flatgeom::ChartData;
use crate::hurwitz::MonodromyTuple;
use crate::picard::zr_class;
use crate::signature::HypothesisVerdict;
use crate::{Class, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTerm {
    pub i: u32,
    #[serde(rename = "S")]
    pub set: Vec<u32>,
    #[serde(with = "crate::serial::rational")]
    pub coeff: Rational,
}

/// A class written out by hand. Boundary labels may use either side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassFixture {
    pub name: String,
    pub g: u32,
    pub retained: Vec<i64>,
    #[serde(with = "crate::serial::rational")]
    pub lambda: Rational,
    #[serde(with = "crate::serial::rational_vec")]
    pub psi: Vec<Rational>,
    #[serde(with = "crate::serial::rational")]
    pub delta0: Rational,
    pub boundary: Vec<BoundaryTerm>,
}

impl ClassFixture {
    pub fn expected(&self) -> Result<Class, String> {
        let n = self.retained.len() as u32;
        if self.psi.len() != n as usize {
            return Err(format!("{} ψ coefficients for {n} markings", self.psi.len()));
        }
        let mut c = Class::zero(self.g, n);
        if self.g > 0 {
            c.add_lambda(self.lambda.clone());
            c.add_delta0(self.delta0.clone());
        }
        for (i, v) in self.psi.iter().enumerate() {
            c.add_psi(i as u32 + 1, v.clone());
        }
        for t in &self.boundary {
            c.add_delta(t.i, &t.set, t.coeff.clone()).map_err(|e| e.to_string())?;
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartFixture {
    pub name: String,
    pub genus: u32,
    pub kappa: Vec<i64>,
    pub chart: ChartData,
    /// Residue forms in pole order, as printed by `ResidueForm`.
    pub residues: Vec<String>,
    pub zero_residue_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleFixture {
    pub name: String,
    pub cycles: Vec<String>,
    /// Degree the tuple is checked in.
    pub degree: usize,
    pub stated_degree: usize,
    pub genus: u32,
    pub verdict: HypothesisVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fixture {
    Class(ClassFixture),
    Chart(ChartFixture),
    Tuple(TupleFixture),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub file: String,
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Fixture {
    pub fn name(&self) -> &str {
        match self {
            Fixture::Class(f) => &f.name,
            Fixture::Chart(f) => &f.name,
            Fixture::Tuple(f) => &f.name,
        }
    }

    /// `Ok(detail)` when the computation reproduces the file, `Err(reason)`
    /// otherwise.
    pub fn check(&self) -> Result<String, String> {
        match self {
            Fixture::Class(f) => {
                let want = f.expected()?;
                let got: Class = zr_class(f.g, &f.retained).map_err(|e| e.to_string())?;
                if got == want {
                    Ok(format!("{} terms match", want.terms().len()))
                } else {
                    Err(format!("computed {got}, file has {want}"))
                }
            }
            Fixture::Chart(f) => {
                f.chart.validate().map_err(|e| e.to_string())?;
                let forms: Vec<String> =
                    f.chart.residue_forms().map_err(|e| e.to_string())?.iter().map(|r| r.to_string()).collect();
                if forms != f.residues {
                    return Err(format!("residues {forms:?}, file has {:?}", f.residues));
                }
                let rank = f.chart.zero_residue_rank().map_err(|e| e.to_string())?;
                if rank != f.zero_residue_rank {
                    return Err(format!("rank {rank}, file has {}", f.zero_residue_rank));
                }
                Ok(format!("residues {}", forms.join(", ")))
            }
            Fixture::Tuple(f) => {
                let cycles: Vec<&str> = f.cycles.iter().map(String::as_str).collect();
                let t = MonodromyTuple::parse(f.degree, &cycles).map_err(|e| e.to_string())?;
                t.validate().map_err(|e| e.to_string())?;
                let genus = t.genus().map_err(|e| e.to_string())?;
                if genus != f.genus {
                    return Err(format!("genus {genus}, file has {}", f.genus));
                }
                let verdict = t.profile().map_err(|e| e.to_string())?.theorem_hypothesis(genus);
                if verdict != f.verdict {
                    return Err(format!("verdict {verdict:?}, file has {:?}", f.verdict));
                }
                let mut detail = format!("degree {}, genus {genus}, {verdict:?}", f.degree);
                if f.degree != f.stated_degree {
                    detail.push_str(&format!("; stated degree {} differs", f.stated_degree));
                }
                Ok(detail)
            }
        }
    }
}

/// All `*.json` files in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<(PathBuf, Fixture)>, String> {
    let entries = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
            let f: Fixture = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", p.display()))?;
            Ok((p, f))
        })
        .collect()
}

pub fn check_dir(dir: &Path) -> Result<Vec<FixtureOutcome>, String> {
    Ok(load_dir(dir)?
        .into_iter()
        .map(|(p, f)| {
            let file = p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let (ok, detail) = match f.check() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            FixtureOutcome { file, name: f.name().to_string(), ok, detail }
        })
        .collect())
}

/// The fixture tree shipped with the crate.
pub fn bundled_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}
