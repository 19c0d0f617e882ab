//! Finite categories enriched in finite sets or in finite-dimensional
//! rational vector spaces.
//!
//! Morphisms carry globally unique labels. In set mode every hom-set is the
//! list of morphisms with that source and target; in linear mode that list is
//! a basis of the hom-space and composition of basis elements is a linear
//! combination. The identity of every object must be one of the listed
//! morphisms in both modes.

use std::collections::HashMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{add_assign, fmt_q, is_zero_vec, scale, Q};

pub type ObjId = usize;
pub type MorId = usize;

/// How hom-objects are modelled. The two shipped enrichments are both
/// concrete with compact unit, so limits and filtered colimits of
/// hom-objects are computed on underlying sets (resp. spaces).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Enrichment {
    Set,
    Vect,
}

impl fmt::Display for Enrichment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Enrichment::Set => "set",
            Enrichment::Vect => "vect",
        })
    }
}

/// An element of a hom-object: a point of a finite set (index into the hom
/// list) or a coordinate vector with respect to the hom basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Point(usize),
    Vector(Vec<Q>),
}

impl Elem {
    pub fn point(&self) -> Option<usize> {
        match self {
            Elem::Point(i) => Some(*i),
            Elem::Vector(_) => None,
        }
    }

    pub fn vector(&self) -> Option<&[Q]> {
        match self {
            Elem::Vector(v) => Some(v),
            Elem::Point(_) => None,
        }
    }
}

/// A morphism `src -> dst` of a [`FiniteCategory`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub src: ObjId,
    pub dst: ObjId,
    pub value: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismData {
    pub label: String,
    pub src: ObjId,
    pub dst: ObjId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    enrichment: Enrichment,
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    homs: Vec<Vec<Vec<MorId>>>,
    position: Vec<usize>,
    identities: Vec<MorId>,
    table: HashMap<(MorId, MorId), Elem>,
}

/// Incremental constructor. `build` checks well-typedness of the data; the
/// category laws are checked separately by [`FiniteCategory::validate`].
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    name: String,
    enrichment: Enrichment,
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identities: HashMap<ObjId, MorId>,
    table: HashMap<(MorId, MorId), Elem>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>, enrichment: Enrichment) -> Self {
        Self {
            name: name.into(),
            enrichment,
            objects: Vec::new(),
            morphisms: Vec::new(),
            identities: HashMap::new(),
            table: HashMap::new(),
        }
    }

    pub fn object(&mut self, name: impl Into<String>) -> ObjId {
        self.objects.push(name.into());
        self.objects.len() - 1
    }

    pub fn morphism(&mut self, label: impl Into<String>, src: ObjId, dst: ObjId) -> MorId {
        self.morphisms.push(MorphismData { label: label.into(), src, dst });
        self.morphisms.len() - 1
    }

    /// Adds a morphism and declares it the identity of `obj`.
    pub fn identity(&mut self, label: impl Into<String>, obj: ObjId) -> MorId {
        let id = self.morphism(label, obj, obj);
        self.identities.insert(obj, id);
        id
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_id(&self, label: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.label == label)
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism_data(&self, m: MorId) -> &MorphismData {
        &self.morphisms[m]
    }

    pub fn enrichment(&self) -> Enrichment {
        self.enrichment
    }

    pub fn identity_of(&self, obj: ObjId) -> Option<MorId> {
        self.identities.get(&obj).copied()
    }

    pub fn composite(&self, g: MorId, f: MorId) -> Option<&Elem> {
        self.table.get(&(g, f))
    }

    /// Set-mode composite `g o f = h`. Returns the previous value on conflict.
    pub fn compose_to(&mut self, g: MorId, f: MorId, h: MorId) -> Result<()> {
        let value = self.point_of(h)?;
        self.insert_composite(g, f, value)
    }

    /// Linear-mode composite `g o f = sum c_i * m_i`.
    pub fn compose_linear(&mut self, g: MorId, f: MorId, terms: &[(Q, MorId)]) -> Result<()> {
        let (src, dst) = (self.morphisms[f].src, self.morphisms[g].dst);
        let hom: Vec<MorId> = self.hom_list(src, dst);
        let mut v = vec![Q::zero(); hom.len()];
        for (c, m) in terms {
            let pos = hom.iter().position(|x| x == m).ok_or_else(|| {
                Error::TypeMismatch(format!(
                    "`{}` is not in hom({}, {})",
                    self.morphisms[*m].label, self.objects[src], self.objects[dst]
                ))
            })?;
            v[pos] += c;
        }
        self.insert_composite(g, f, Elem::Vector(v))
    }

    fn insert_composite(&mut self, g: MorId, f: MorId, value: Elem) -> Result<()> {
        if self.morphisms[f].dst != self.morphisms[g].src {
            return Err(Error::TypeMismatch(format!(
                "`{}` and `{}` are not composable",
                self.morphisms[g].label, self.morphisms[f].label
            )));
        }
        match self.table.get(&(g, f)) {
            Some(old) if *old != value => Err(Error::Malformed(format!(
                "conflicting composites for {} o {}",
                self.morphisms[g].label, self.morphisms[f].label
            ))),
            _ => {
                self.table.insert((g, f), value);
                Ok(())
            }
        }
    }

    fn point_of(&self, h: MorId) -> Result<Elem> {
        let d = &self.morphisms[h];
        let hom = self.hom_list(d.src, d.dst);
        let pos = hom.iter().position(|&x| x == h).expect("morphism in its own hom");
        Ok(match self.enrichment {
            Enrichment::Set => Elem::Point(pos),
            Enrichment::Vect => {
                let mut v = vec![Q::zero(); hom.len()];
                v[pos] = Q::one();
                Elem::Vector(v)
            }
        })
    }

    fn hom_list(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == a && self.morphisms[m].dst == b)
            .collect()
    }

    /// Fills in every composite involving an identity.
    pub fn fill_identity_composites(&mut self) -> Result<()> {
        for f in 0..self.morphisms.len() {
            let (s, t) = (self.morphisms[f].src, self.morphisms[f].dst);
            if let (Some(&is), Some(&it)) = (self.identities.get(&s), self.identities.get(&t)) {
                let v = self.point_of(f)?;
                self.insert_composite(f, is, v.clone())?;
                self.insert_composite(it, f, v)?;
            }
        }
        Ok(())
    }

    pub fn build(self) -> Result<FiniteCategory> {
        let n = self.objects.len();
        for (i, o) in self.objects.iter().enumerate() {
            if self.objects[..i].contains(o) {
                return Err(Error::Malformed(format!("duplicate object `{o}`")));
            }
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.src >= n || m.dst >= n {
                return Err(Error::Malformed(format!("morphism `{}` has unknown endpoint", m.label)));
            }
            if self.morphisms[..i].iter().any(|x| x.label == m.label) {
                return Err(Error::Malformed(format!("duplicate morphism label `{}`", m.label)));
            }
        }
        let mut homs = vec![vec![Vec::new(); n]; n];
        let mut position = vec![0; self.morphisms.len()];
        for (id, m) in self.morphisms.iter().enumerate() {
            position[id] = homs[m.src][m.dst].len();
            homs[m.src][m.dst].push(id);
        }
        let mut identities = Vec::with_capacity(n);
        for o in 0..n {
            let id = *self
                .identities
                .get(&o)
                .ok_or_else(|| Error::Malformed(format!("object `{}` has no identity", self.objects[o])))?;
            identities.push(id);
        }
        for ((g, f), v) in &self.table {
            let len = homs[self.morphisms[*f].src][self.morphisms[*g].dst].len();
            let ok = match (self.enrichment, v) {
                (Enrichment::Set, Elem::Point(i)) => *i < len,
                (Enrichment::Vect, Elem::Vector(x)) => x.len() == len,
                _ => false,
            };
            if !ok {
                return Err(Error::Malformed(format!(
                    "composite {} o {} has the wrong shape",
                    self.morphisms[*g].label, self.morphisms[*f].label
                )));
            }
        }
        Ok(FiniteCategory {
            name: self.name,
            enrichment: self.enrichment,
            objects: self.objects,
            morphisms: self.morphisms,
            homs,
            position,
            identities,
            table: self.table,
        })
    }
}

/// One failed law, with enough data to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Violation {
    MissingComposite { g: String, f: String },
    Associativity { h: String, g: String, f: String },
    LeftIdentity { f: String },
    RightIdentity { f: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FiniteCategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn enrichment(&self) -> Enrichment {
        self.enrichment
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, m: MorId) -> &MorphismData {
        &self.morphisms[m]
    }

    pub fn morphism_id(&self, label: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.label == label)
    }

    /// Morphism labels of `hom(a, b)` in hom order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a][b]
    }

    pub fn hom_size(&self, a: ObjId, b: ObjId) -> usize {
        self.homs[a][b].len()
    }

    pub fn identity_id(&self, o: ObjId) -> MorId {
        self.identities[o]
    }

    pub fn basis_arrow(&self, m: MorId) -> Arrow {
        let d = &self.morphisms[m];
        let pos = self.position[m];
        let value = match self.enrichment {
            Enrichment::Set => Elem::Point(pos),
            Enrichment::Vect => {
                let mut v = vec![Q::zero(); self.homs[d.src][d.dst].len()];
                v[pos] = Q::one();
                Elem::Vector(v)
            }
        };
        Arrow { src: d.src, dst: d.dst, value }
    }

    pub fn identity(&self, o: ObjId) -> Arrow {
        self.basis_arrow(self.identities[o])
    }

    /// All elements (set mode) or the basis (linear mode) of `hom(a, b)`.
    pub fn hom_arrows(&self, a: ObjId, b: ObjId) -> Vec<Arrow> {
        self.homs[a][b].iter().map(|&m| self.basis_arrow(m)).collect()
    }

    pub fn zero_arrow(&self, a: ObjId, b: ObjId) -> Result<Arrow> {
        match self.enrichment {
            Enrichment::Vect => Ok(Arrow { src: a, dst: b, value: Elem::Vector(vec![Q::zero(); self.hom_size(a, b)]) }),
            Enrichment::Set => Err(Error::EnrichmentMismatch("zero morphisms exist only in linear mode".into())),
        }
    }

    /// The label of a basis morphism equal to `f`, if any.
    pub fn basis_label(&self, f: &Arrow) -> Option<&str> {
        let hom = &self.homs[f.src][f.dst];
        match &f.value {
            Elem::Point(i) => hom.get(*i).map(|&m| self.morphisms[m].label.as_str()),
            Elem::Vector(v) => {
                let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                (nz.len() == 1 && v[nz[0]].is_one()).then(|| self.morphisms[hom[nz[0]]].label.as_str())
            }
        }
    }

    /// Human-readable rendering: a label in set mode, a linear combination of
    /// labels in linear mode.
    pub fn describe(&self, f: &Arrow) -> String {
        let hom = &self.homs[f.src][f.dst];
        match &f.value {
            Elem::Point(i) => self.morphisms[hom[*i]].label.clone(),
            Elem::Vector(v) => {
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| {
                        let label = &self.morphisms[hom[i]].label;
                        if c.is_one() {
                            label.clone()
                        } else {
                            format!("{}*{}", fmt_q(c), label)
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            }
        }
    }

    pub fn check_arrow(&self, f: &Arrow) -> Result<()> {
        if f.src >= self.objects.len() || f.dst >= self.objects.len() {
            return Err(Error::TypeMismatch("arrow endpoint out of range".into()));
        }
        let len = self.homs[f.src][f.dst].len();
        let ok = match (self.enrichment, &f.value) {
            (Enrichment::Set, Elem::Point(i)) => *i < len,
            (Enrichment::Vect, Elem::Vector(v)) => v.len() == len,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::TypeMismatch(format!(
                "value does not belong to hom({}, {})",
                self.objects[f.src], self.objects[f.dst]
            )))
        }
    }

    fn table_get(&self, g: MorId, f: MorId) -> Result<&Elem> {
        self.table.get(&(g, f)).ok_or_else(|| Error::MissingComposite {
            g: self.morphisms[g].label.clone(),
            f: self.morphisms[f].label.clone(),
        })
    }

    /// `g o f`.
    pub fn compose(&self, g: &Arrow, f: &Arrow) -> Result<Arrow> {
        if f.dst != g.src {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} after {}: {} != {}",
                self.describe(g),
                self.describe(f),
                self.objects[f.dst],
                self.objects[g.src]
            )));
        }
        let (a, b, c) = (f.src, f.dst, g.dst);
        let value = match (&g.value, &f.value) {
            (Elem::Point(j), Elem::Point(i)) => {
                let gm = self.homs[b][c][*j];
                let fm = self.homs[a][b][*i];
                self.table_get(gm, fm)?.clone()
            }
            (Elem::Vector(gv), Elem::Vector(fv)) => {
                let mut acc = vec![Q::zero(); self.homs[a][c].len()];
                for (j, gc) in gv.iter().enumerate() {
                    if gc.is_zero() {
                        continue;
                    }
                    for (i, fc) in fv.iter().enumerate() {
                        if fc.is_zero() {
                            continue;
                        }
                        let gm = self.homs[b][c][j];
                        let fm = self.homs[a][b][i];
                        let Elem::Vector(prod) = self.table_get(gm, fm)? else {
                            return Err(Error::Malformed("set composite in linear category".into()));
                        };
                        add_assign(&mut acc, &scale(prod, &(gc * fc)));
                    }
                }
                Elem::Vector(acc)
            }
            _ => return Err(Error::EnrichmentMismatch("mixed set and linear arrows".into())),
        };
        Ok(Arrow { src: a, dst: c, value })
    }

    /// Composes a path given in application order: `fs[0]` first.
    pub fn compose_path(&self, fs: &[Arrow]) -> Result<Arrow> {
        let mut it = fs.iter();
        let mut acc = it.next().ok_or_else(|| Error::Precondition("empty path".into()))?.clone();
        for f in it {
            acc = self.compose(f, &acc)?;
        }
        Ok(acc)
    }

    /// Linear combination of arrows in one hom-space.
    pub fn combine(&self, a: ObjId, b: ObjId, terms: &[(Q, Arrow)]) -> Result<Arrow> {
        let mut acc = vec![Q::zero(); self.hom_size(a, b)];
        for (c, f) in terms {
            let v = f.value.vector().ok_or_else(|| Error::EnrichmentMismatch("linear combination in set mode".into()))?;
            add_assign(&mut acc, &scale(v, c));
        }
        Ok(Arrow { src: a, dst: b, value: Elem::Vector(acc) })
    }

    pub fn is_zero_arrow(&self, f: &Arrow) -> bool {
        matches!(&f.value, Elem::Vector(v) if is_zero_vec(v))
    }

    /// Checks every category law; the report names each failing instance.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let label = |m: MorId| self.morphisms[m].label.clone();
        for g in 0..self.morphisms.len() {
            for f in 0..self.morphisms.len() {
                if self.morphisms[f].dst == self.morphisms[g].src && !self.table.contains_key(&(g, f)) {
                    violations.push(Violation::MissingComposite { g: label(g), f: label(f) });
                }
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for f in 0..self.morphisms.len() {
            let fa = self.basis_arrow(f);
            let left = self.compose(&self.identity(fa.dst), &fa).ok();
            if left.as_ref() != Some(&fa) {
                violations.push(Violation::LeftIdentity { f: label(f) });
            }
            let right = self.compose(&fa, &self.identity(fa.src)).ok();
            if right.as_ref() != Some(&fa) {
                violations.push(Violation::RightIdentity { f: label(f) });
            }
        }
        for f in 0..self.morphisms.len() {
            let fa = self.basis_arrow(f);
            for g in self.out_of(fa.dst) {
                let ga = self.basis_arrow(g);
                let gf = self.compose(&ga, &fa);
                for h in self.out_of(ga.dst) {
                    let ha = self.basis_arrow(h);
                    let lhs = self.compose(&ha, &ga).and_then(|hg| self.compose(&hg, &fa));
                    let rhs = gf.as_ref().map_err(Clone::clone).and_then(|gf| self.compose(&ha, gf));
                    if lhs.ok() != rhs.ok() {
                        violations.push(Violation::Associativity { h: label(h), g: label(g), f: label(f) });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    fn out_of(&self, o: ObjId) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).filter(move |&m| self.morphisms[m].src == o)
    }

    /// The opposite category: `hom_op(a, b) = hom(b, a)`, composition
    /// reversed. Applying it twice returns the original data exactly.
    pub fn opposite(&self) -> FiniteCategory {
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        let n = self.objects.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorphismData { label: m.label.clone(), src: m.dst, dst: m.src })
            .collect();
        let homs = (0..n).map(|a| (0..n).map(|b| self.homs[b][a].clone()).collect()).collect();
        let table = self.table.iter().map(|(&(g, f), v)| ((f, g), v.clone())).collect();
        FiniteCategory {
            name,
            enrichment: self.enrichment,
            objects: self.objects.clone(),
            morphisms,
            homs,
            position: self.position.clone(),
            identities: self.identities.clone(),
            table,
        }
    }

    /// Converts an arrow of `self` to the corresponding arrow of
    /// `self.opposite()`.
    pub fn op_arrow(f: &Arrow) -> Arrow {
        Arrow { src: f.dst, dst: f.src, value: f.value.clone() }
    }

    /// Raw composition entry between basis morphisms, if present.
    pub fn table_entry(&self, g: MorId, f: MorId) -> Option<&Elem> {
        self.table.get(&(g, f))
    }

    /// Rebuilds a builder holding exactly this data.
    pub fn to_builder(&self) -> CategoryBuilder {
        CategoryBuilder {
            name: self.name.clone(),
            enrichment: self.enrichment,
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identities.iter().enumerate().map(|(o, &m)| (o, m)).collect(),
            table: self.table.clone(),
        }
    }
}
