//! Numerical models of polarized smooth projective threefolds: the
//! Néron–Severi intersection data, validation, the Todd class of a Fano
//! threefold and the lattice constant κ.

pub mod lattice;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat, Rational};
use crate::report::{CheckReport, Entry, Status, Verdict};

/// The model file layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub picard_rank: usize,
    pub basis_labels: Vec<String>,
    pub triple_form: Vec<Vec<Vec<i64>>>,
    pub h: Vec<i64>,
    pub c2_pair: Vec<i64>,
    pub index: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective_generators: Option<Vec<Vec<i64>>>,
    /// Printed reference values (`"e2": "22"`) to compare against computed ones.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub reference_values: BTreeMap<String, String>,
}

/// Lattice-level data of a polarized threefold, with derived pairings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelFile", into = "ModelFile")]
pub struct ThreefoldModel {
    file: ModelFile,
    d: Rational,
    h2_pair: Vec<Rational>,
    qh: Vec<Vec<Rational>>,
    c2h: Rational,
}

impl TryFrom<ModelFile> for ThreefoldModel {
    type Error = Error;
    fn try_from(f: ModelFile) -> Result<Self> {
        Self::new(f)
    }
}

impl From<ThreefoldModel> for ModelFile {
    fn from(m: ThreefoldModel) -> Self {
        m.file
    }
}

/// Todd class of a Fano threefold, stored by coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToddClass {
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub t0: Rational,
    /// Coefficient of H in degree one.
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub t1_coeff: Rational,
    /// Coefficient of H² in degree two.
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub t2_h2_coeff: Rational,
    /// Coefficient of c₂ in degree two.
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub t2_c2_coeff: Rational,
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub t3: Rational,
}

impl ThreefoldModel {
    /// Checks the shape of the data and derives d, H²·Dᵢ, H·Dᵢ·Dⱼ and c₂·H.
    pub fn new(file: ModelFile) -> Result<Self> {
        let n = file.picard_rank;
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if n == 0 {
            return bad("picard_rank must be positive".into());
        }
        if file.basis_labels.len() != n {
            return bad(format!("basis_labels has {} entries, expected {n}", file.basis_labels.len()));
        }
        if file.triple_form.len() != n
            || file.triple_form.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n))
        {
            return bad(format!("triple_form must be a {n}×{n}×{n} tensor"));
        }
        if file.h.len() != n {
            return bad(format!("h has length {}, expected {n}", file.h.len()));
        }
        if file.c2_pair.len() != n {
            return bad(format!("c2_pair has length {}, expected {n}", file.c2_pair.len()));
        }
        if file.index > 4 {
            return bad(format!("index {} outside 0..=4", file.index));
        }
        if let Some(g) = &file.effective_generators {
            if let Some(v) = g.iter().find(|v| v.len() != n) {
                return bad(format!("effective generator {v:?} has wrong length"));
            }
        }
        let t = |i: usize, j: usize, k: usize| int(file.triple_form[i][j][k]);
        let h: Vec<Rational> = file.h.iter().map(|&x| int(x)).collect();
        let mut qh = vec![vec![Rational::zero(); n]; n];
        for (i, row) in qh.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for (k, hk) in h.iter().enumerate() {
                    *cell += hk * t(k, i, j);
                }
            }
        }
        let h2_pair: Vec<Rational> = (0..n).map(|i| (0..n).map(|j| &h[j] * &qh[i][j]).sum()).collect();
        let d = (0..n).map(|i| &h[i] * &h2_pair[i]).sum();
        let c2h = (0..n).map(|i| &h[i] * int(file.c2_pair[i])).sum();
        Ok(Self { file, d, h2_pair, qh, c2h })
    }

    /// A Picard rank one Fano model with H³ = d, index r and c₂·H = 24/r.
    pub fn picard_rank_one(d: i64, r: u32) -> Result<Self> {
        if !(1..=4).contains(&r) || 24 % r != 0 {
            return Err(Error::InvalidModel(format!("index {r} outside 1..=4")));
        }
        Self::new(ModelFile {
            name: format!("picard rank one, index {r}, degree {d}"),
            picard_rank: 1,
            basis_labels: vec!["H".into()],
            triple_form: vec![vec![vec![d]]],
            h: vec![1],
            c2_pair: vec![24 / i64::from(r)],
            index: r,
            effective_generators: None,
            reference_values: BTreeMap::new(),
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(s);
        let file: ModelFile = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::Parse(format!("model at {}: {}", e.path(), e.inner())))?;
        Self::new(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.file).expect("model serializes")
    }

    pub fn file(&self) -> &ModelFile {
        &self.file
    }

    pub fn name(&self) -> &str {
        &self.file.name
    }

    pub fn rank(&self) -> usize {
        self.file.picard_rank
    }

    pub fn index(&self) -> u32 {
        self.file.index
    }

    pub fn index_rational(&self) -> Rational {
        int(i64::from(self.file.index))
    }

    pub fn is_fano(&self) -> bool {
        self.file.index >= 1
    }

    /// H³.
    pub fn degree(&self) -> &Rational {
        &self.d
    }

    pub fn h(&self) -> Vec<Rational> {
        self.file.h.iter().map(|&x| int(x)).collect()
    }

    /// H²·Dᵢ.
    pub fn h2_pair(&self) -> &[Rational] {
        &self.h2_pair
    }

    /// H·Dᵢ·Dⱼ.
    pub fn qh(&self) -> &[Vec<Rational>] {
        &self.qh
    }

    /// c₂·Dᵢ.
    pub fn c2_pair(&self) -> Vec<Rational> {
        self.file.c2_pair.iter().map(|&x| int(x)).collect()
    }

    /// c₂·H.
    pub fn c2h(&self) -> &Rational {
        &self.c2h
    }

    pub fn reference_value(&self, key: &str) -> Option<&str> {
        self.file.reference_values.get(key).map(String::as_str)
    }

    pub fn require_fano(&self, what: &str) -> Result<()> {
        if self.is_fano() {
            Ok(())
        } else {
            Err(Error::Domain(format!("{what} requires Fano index")))
        }
    }

    /// Errors unless every invariant of [`validate`] passes.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = validate(self);
        match report.entries.iter().find(|e| e.status == Status::Fail) {
            Some(e) => Err(Error::InvalidModel(format!(
                "{} failed: {}",
                e.name,
                serde_json::to_string(&e.values).unwrap_or_default()
            ))),
            None => Ok(()),
        }
    }

    /// H²·D for a lattice vector D.
    pub fn h2_dot(&self, v: &[Rational]) -> Rational {
        self.h2_pair.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// H·D·D for a lattice vector D.
    pub fn h_dot_sq(&self, v: &[Rational]) -> Rational {
        let n = self.rank();
        let mut s = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                s += &self.qh[i][j] * &v[i] * &v[j];
            }
        }
        s
    }

    /// q(D) = (H²D)² − H³·(H·D²), nonnegative by the Hodge index theorem.
    pub fn hodge_gap(&self, v: &[Rational]) -> Rational {
        let a = self.h2_dot(v);
        &a * &a - &self.d * self.h_dot_sq(v)
    }

    fn int_matrix(&self, m: &[Vec<Rational>]) -> lattice::Matrix {
        m.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect()
    }
}

/// Checks symmetry, d > 0, the Hodge index signature, the Fano relation
/// c₂·H = 24/r and positivity of H² on the effective generators.
#[allow(clippy::needless_range_loop)]
pub fn validate(model: &ThreefoldModel) -> CheckReport {
    let n = model.rank();
    let t = &model.file.triple_form;
    let mut entries = Vec::new();

    let mut asym = None;
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = t[i][j][k];
                if [t[i][k][j], t[j][i][k], t[j][k][i], t[k][i][j], t[k][j][i]].iter().any(|&w| w != v) {
                    asym = Some([i, j, k]);
                    break 'outer;
                }
            }
        }
    }
    let mut e = Entry::pass_if("symmetry", asym.is_none());
    if let Some(idx) = asym {
        e = e.with("witness_index", idx);
    }
    entries.push(e);

    entries.push(Entry::pass_if("degree_positive", model.d.is_positive()).with_str("d", &model.d));

    let (pos, neg, zero) = lattice::inertia(&model.qh);
    entries.push(
        Entry::pass_if("hodge_signature", (pos, neg, zero) == (1, n - 1, 0))
            .with("positive", pos)
            .with("negative", neg)
            .with("zero", zero)
            .with("expected", [1, n - 1, 0]),
    );

    if model.is_fano() {
        let expected = rat(24, i64::from(model.index()));
        entries.push(
            Entry::pass_if("fano_c2_relation", model.c2h == expected)
                .with_str("c2H", &model.c2h)
                .with_str("expected_24_over_r", &expected),
        );
    } else {
        entries.push(
            Entry::new("fano_c2_relation", Status::Info)
                .with_str("c2H", &model.c2h)
                .with_str("note", "index 0: Fano-only operations disabled"),
        );
    }

    if let Some(gens) = &model.file.effective_generators {
        let vals: Vec<Rational> =
            gens.iter().map(|g| model.h2_dot(&g.iter().map(|&x| int(x)).collect::<Vec<_>>())).collect();
        let ok = !gens.is_empty() && vals.iter().all(|v| v.is_positive());
        entries.push(
            Entry::pass_if("effective_generators_positive", ok)
                .with("h2_values", vals.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
        );
    }

    CheckReport::from_entries(format!("model validate {}", model.name()), entries, Verdict::Holds)
}

/// Todd class (1, rH/2, (r²H² + c₂)/12, 1) of a Fano model.
pub fn todd(model: &ThreefoldModel) -> Result<ToddClass> {
    model.require_fano("Todd")?;
    let r = model.index_rational();
    Ok(ToddClass {
        t0: int(1),
        t1_coeff: &r / int(2),
        t2_h2_coeff: &r * &r / int(12),
        t2_c2_coeff: rat(1, 12),
        t3: int(1),
    })
}

/// Gram matrix of q(D) = (H²D)² − d·(H·D²) in the model basis.
pub fn hodge_gap_gram(model: &ThreefoldModel) -> lattice::Matrix {
    let n = model.rank();
    let v = &model.h2_pair;
    let g: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| &v[i] * &v[j] - &model.d * &model.qh[i][j]).collect()).collect();
    model.int_matrix(&g)
}

/// Smallest positive value of (H²D)² − d·(H·D²) over the lattice.
pub fn e1(model: &ThreefoldModel) -> Result<BigInt> {
    let n = model.rank();
    if n == 1 {
        return Err(Error::Domain("e1 undefined at Picard rank one".into()));
    }
    if !model.d.is_positive() {
        return Err(Error::InvalidModel("degree must be positive".into()));
    }
    let h: Vec<BigInt> = model.file.h.iter().map(|&x| BigInt::from(x)).collect();
    let content = h.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    let prim: Vec<BigInt> = h.iter().map(|x| x / &content).collect();
    let u = lattice::complete_to_basis(&prim)?;
    let g = lattice::transform(&hodge_gap_gram(model), &u);
    if (0..n).any(|i| !g[0][i].is_zero()) {
        return Err(Error::InvalidModel("q does not vanish along H".into()));
    }
    let block: lattice::Matrix = g[1..].iter().map(|r| r[1..].to_vec()).collect();
    lattice::min_positive_value(&block)
}

/// (min H²·G)² + 1 over the supplied effective generators G.
pub fn e2(model: &ThreefoldModel) -> Result<BigInt> {
    if model.rank() == 1 {
        return Err(Error::Domain("e2 undefined at Picard rank one".into()));
    }
    let gens = match &model.file.effective_generators {
        Some(g) if !g.is_empty() => g,
        _ => return Err(Error::Domain("effective cone data required".into())),
    };
    let m = gens.iter().map(|g| model.h2_dot(&g.iter().map(|&x| int(x)).collect::<Vec<_>>())).min().expect("nonempty");
    if !m.is_positive() {
        return Err(Error::InvalidModel(format!("effective generator with nonpositive H² pairing {m}")));
    }
    let m = m.to_integer();
    Ok(&m * &m + 1)
}

/// κ = min{e₁/d², e₂/d², 3/(2rd)}, or 3/(2rd) at Picard rank one.
pub fn kappa(model: &ThreefoldModel) -> Result<Rational> {
    Ok(kappa_parts(model)?.kappa)
}

/// The pieces entering κ.
#[derive(Clone, Debug)]
pub struct KappaParts {
    pub e1: Option<BigInt>,
    pub e2: Option<BigInt>,
    pub index_term: Rational,
    pub kappa: Rational,
}

pub fn kappa_parts(model: &ThreefoldModel) -> Result<KappaParts> {
    model.require_fano("kappa")?;
    if !model.d.is_positive() {
        return Err(Error::InvalidModel("degree must be positive".into()));
    }
    let d = &model.d;
    let index_term = rat(3, 2) / (model.index_rational() * d);
    if model.rank() == 1 {
        return Ok(KappaParts { e1: None, e2: None, kappa: index_term.clone(), index_term });
    }
    let e1 = e1(model)?;
    let e2 = e2(model)?;
    let d2 = d * d;
    let kappa =
        [Rational::from_integer(e1.clone()) / &d2, Rational::from_integer(e2.clone()) / &d2, index_term.clone()]
            .into_iter()
            .min()
            .expect("three candidates");
    Ok(KappaParts { e1: Some(e1), e2: Some(e2), index_term, kappa })
}

/// κ with its ingredients and any mismatch against printed reference values.
pub fn kappa_report(model: &ThreefoldModel) -> Result<CheckReport> {
    let parts = kappa_parts(model)?;
    let mut rep = CheckReport::new(format!("kappa {}", model.name()), Verdict::Holds);
    let d2 = &model.d * &model.d;
    let mut e = Entry::new("kappa", Status::Info)
        .with_str("kappa", &parts.kappa)
        .with_str("d", &model.d)
        .with_str("index_term", &parts.index_term);
    if let (Some(e1), Some(e2)) = (&parts.e1, &parts.e2) {
        e = e
            .with_str("e1", e1)
            .with_str("e2", e2)
            .with_str("e1_over_d2", Rational::from_integer(e1.clone()) / &d2)
            .with_str("e2_over_d2", Rational::from_integer(e2.clone()) / &d2);
    }
    rep.push(e);
    if parts.e2.is_some() {
        rep = rep.note("e2 is computed from the supplied effective generators: H² is additive and positive on the effective cone, so its minimum over nonzero effective classes is attained at a generator");
    }
    for (key, computed) in [("e1", &parts.e1), ("e2", &parts.e2)] {
        if let (Some(printed), Some(c)) = (model.reference_value(key), computed) {
            let matches = printed.trim() == c.to_string();
            let status = if matches { Status::Pass } else { Status::Info };
            rep.push(
                Entry::new(format!("{key}_reference"), status)
                    .with_str("computed", c)
                    .with_str("reference", printed)
                    .with("matches", matches),
            );
            if !matches {
                let prints_above_e1 = match (&parts.e1, crate::exactnum::parse_rational(printed)) {
                    (Some(e1), Ok(p)) => p > Rational::from_integer(e1.clone()),
                    _ => false,
                };
                let mut note = format!("{key}: computed {c} differs from the reference value {printed}");
                if prints_above_e1 && key == "e2" {
                    note.push_str("; both exceed e1, so kappa is unaffected");
                }
                rep = rep.note(note);
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blowup() -> ThreefoldModel {
        let mut t = vec![vec![vec![0; 2]; 2]; 2];
        t[0][0][0] = 1;
        t[1][1][1] = 1;
        ThreefoldModel::new(ModelFile {
            name: "blowup".into(),
            picard_rank: 2,
            basis_labels: vec!["L".into(), "E".into()],
            triple_form: t,
            h: vec![2, -1],
            c2_pair: vec![6, 0],
            index: 2,
            effective_generators: Some(vec![vec![0, 1], vec![1, -1]]),
            reference_values: BTreeMap::new(),
        })
        .unwrap()
    }

    #[test]
    fn blowup_invariants() {
        let m = blowup();
        assert_eq!(*m.degree(), int(7));
        assert_eq!(*m.c2h(), int(12));
        assert_eq!(validate(&m).verdict, Verdict::Holds);
        assert_eq!(e1(&m).unwrap(), BigInt::from(2));
        assert_eq!(e2(&m).unwrap(), BigInt::from(2));
        assert_eq!(kappa(&m).unwrap(), rat(2, 49));
    }

    #[test]
    fn shape_errors() {
        let mut f = blowup().file().clone();
        f.h = vec![1];
        assert!(ThreefoldModel::new(f).is_err());
    }

    #[test]
    fn non_fano_rejected() {
        let mut f = blowup().file().clone();
        f.index = 0;
        let m = ThreefoldModel::new(f).unwrap();
        assert!(todd(&m).is_err());
        assert!(kappa(&m).is_err());
    }
}
