#![allow(dead_code)]

use std::sync::Arc;

use num::{BigInt, One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wellpoint::cat::instances::linearise;
use wellpoint::cat::{Arrow, CategoryBuilder, Enrichment, FiniteCategory, Functor, NatTransformation};
use wellpoint::linalg::Q;
use wellpoint::localise::WellPointedEndo;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A finite monoid given by its multiplication table, element 0 the unit.
#[derive(Clone, Debug)]
pub struct Monoid {
    pub mul: Vec<Vec<usize>>,
}

impl Monoid {
    pub fn size(&self) -> usize {
        self.mul.len()
    }

    /// The transformation monoid generated by `gens` acting on `0..k`.
    pub fn generated(k: usize, gens: &[Vec<usize>], cap: usize) -> Option<Self> {
        let mut elems: Vec<Vec<usize>> = vec![(0..k).collect()];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let h: Vec<usize> = (0..k).map(|x| g[elems[i][x]]).collect();
                if !elems.contains(&h) {
                    elems.push(h);
                    if elems.len() > cap {
                        return None;
                    }
                }
            }
            i += 1;
        }
        let idx = |m: &Vec<usize>| elems.iter().position(|e| e == m).unwrap();
        let mul = elems
            .iter()
            .map(|a| elems.iter().map(|b| idx(&(0..k).map(|x| a[b[x]]).collect())).collect())
            .collect();
        Some(Monoid { mul })
    }

    pub fn trivial() -> Self {
        Monoid { mul: vec![vec![0]] }
    }

    fn is_hom(&self, phi: &[usize]) -> bool {
        phi[0] == 0 && (0..self.size()).all(|a| (0..self.size()).all(|b| phi[self.mul[a][b]] == self.mul[phi[a]][phi[b]]))
    }

    /// Endomorphisms `h ↦ u h u⁻¹` for units `u`, plus the identity.
    pub fn inner_endomorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut out = vec![(0..n).collect::<Vec<_>>()];
        for u in 0..n {
            if let Some(v) = (0..n).find(|&v| self.mul[u][v] == 0 && self.mul[v][u] == 0) {
                let phi: Vec<usize> = (0..n).map(|h| self.mul[self.mul[u][h]][v]).collect();
                if self.is_hom(&phi) && !out.contains(&phi) {
                    out.push(phi);
                }
            }
        }
        out
    }

    /// Every endomorphism, by brute force over maps fixing the unit.
    pub fn all_endomorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut out = Vec::new();
        let mut phi = vec![0; n];
        loop {
            if self.is_hom(&phi) {
                out.push(phi.clone());
            }
            let mut i = 1;
            while i < n && phi[i] == n - 1 {
                phi[i] = 0;
                i += 1;
            }
            if i >= n {
                return out;
            }
            phi[i] += 1;
        }
    }

    /// Elements `t` with `φ(h) t = t h` for all `h` and `φ(t) = t`.
    pub fn pointings(&self, phi: &[usize]) -> Vec<usize> {
        (0..self.size())
            .filter(|&t| phi[t] == t && (0..self.size()).all(|h| self.mul[phi[h]][t] == self.mul[t][h]))
            .collect()
    }
}

/// A preorder on `0..n` with a monotone inflationary map `s`.
#[derive(Clone, Debug)]
pub struct Preorder {
    pub leq: Vec<Vec<bool>>,
    pub s: Vec<usize>,
}

impl Preorder {
    pub fn size(&self) -> usize {
        self.leq.len()
    }

    pub fn pairs(&self) -> usize {
        self.leq.iter().flatten().filter(|b| **b).count()
    }

    pub fn random(rng: &mut ChaCha8Rng, n: usize) -> Self {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            for (j, b) in row.iter_mut().enumerate() {
                *b = i == j || rng.gen_bool(0.35);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        loop {
            let s: Vec<usize> = (0..n)
                .map(|x| {
                    let ups: Vec<usize> = (0..n).filter(|&y| leq[x][y]).collect();
                    *ups.choose(rng).unwrap()
                })
                .collect();
            if (0..n).all(|a| (0..n).all(|b| !leq[a][b] || leq[s[a]][s[b]])) {
                return Preorder { leq, s };
            }
        }
    }

    pub fn point() -> Self {
        Preorder { leq: vec![vec![true]], s: vec![0] }
    }
}

/// A well-pointed endofunctor on `M × P` as plain tables: `Ω = φ × s` and
/// `θ = Σ c_k (t_k, x ≤ s x)`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub monoid: Monoid,
    pub order: Preorder,
    pub phi: Vec<usize>,
    pub theta: Vec<(Q, usize)>,
}

impl Instance {
    pub fn morphism_count(&self) -> usize {
        self.monoid.size() * self.order.pairs()
    }

    fn arrows(&self) -> Vec<(usize, usize, usize)> {
        let n = self.order.size();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.order.leq[i][j] {
                    for m in 0..self.monoid.size() {
                        out.push((m, i, j));
                    }
                }
            }
        }
        out
    }

    pub fn set_category(&self) -> FiniteCategory {
        let arrows = self.arrows();
        let mut b = CategoryBuilder::new("MxP", Enrichment::Set);
        for i in 0..self.order.size() {
            b.object(format!("o{i}"));
        }
        let ids: Vec<usize> = arrows
            .iter()
            .map(|&(m, i, j)| if m == 0 && i == j { b.identity(format!("id_o{i}"), i) } else { b.morphism(format!("m{m}_{i}_{j}"), i, j) })
            .collect();
        let find = |m: usize, i: usize, j: usize| arrows.iter().position(|a| *a == (m, i, j)).unwrap();
        for (f, &(mf, i, j)) in arrows.iter().enumerate() {
            for (g, &(mg, j2, k)) in arrows.iter().enumerate() {
                if j2 == j {
                    b.compose_to(ids[g], ids[f], ids[find(self.monoid.mul[mg][mf], i, k)]).unwrap();
                }
            }
        }
        b.build().unwrap()
    }

    /// The endofunctor and pointing on `cat`, which is `set_category()` or
    /// its linearisation.
    pub fn endo(&self, cat: FiniteCategory) -> WellPointedEndo {
        let arrows = self.arrows();
        let find = |m: usize, i: usize, j: usize| arrows.iter().position(|a| *a == (m, i, j)).unwrap();
        let c = Arc::new(cat);
        let s = &self.order.s;
        let on_morphisms = arrows.iter().map(|&(m, i, j)| c.basis_arrow(find(self.phi[m], s[i], s[j]))).collect();
        let omega = Functor { src: c.clone(), dst: c.clone(), on_objects: s.clone(), on_morphisms };
        let theta: Vec<Arrow> = (0..self.order.size())
            .map(|x| {
                let terms: Vec<(Q, Arrow)> = self.theta.iter().map(|(k, t)| (k.clone(), c.basis_arrow(find(*t, x, s[x])))).collect();
                match c.enrichment() {
                    Enrichment::Set => terms[0].1.clone(),
                    Enrichment::Vect => c.combine(x, s[x], &terms).unwrap(),
                }
            })
            .collect();
        WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, theta)).unwrap()
    }

    pub fn set_endo(&self) -> WellPointedEndo {
        self.endo(self.set_category())
    }

    pub fn vect_endo(&self) -> WellPointedEndo {
        self.endo(linearise(&self.set_category()).unwrap())
    }
}

fn random_monoid(rng: &mut ChaCha8Rng, cap: usize) -> Monoid {
    if cap <= 1 || rng.gen_bool(0.15) {
        return Monoid::trivial();
    }
    loop {
        let k = rng.gen_range(2..=3);
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2)).map(|_| (0..k).map(|_| rng.gen_range(0..k)).collect()).collect();
        if let Some(m) = Monoid::generated(k, &gens, cap) {
            return m;
        }
    }
}

/// A random instance with at most four objects and forty morphisms. With
/// `linear` set the pointing may be a scalar combination, including zero.
pub fn random_instance(rng: &mut ChaCha8Rng, linear: bool) -> Instance {
    let n = rng.gen_range(1..=4);
    let order = if rng.gen_bool(0.2) { Preorder::point() } else { Preorder::random(rng, n) };
    let monoid = random_monoid(rng, 40 / order.pairs());
    let endos = if monoid.size() <= 6 { monoid.all_endomorphisms() } else { monoid.inner_endomorphisms() };
    let (phi, ts) = loop {
        let phi = endos.choose(rng).unwrap().clone();
        let ts = monoid.pointings(&phi);
        if !ts.is_empty() {
            break (phi, ts);
        }
    };
    let theta = if linear {
        let coeffs = [q(0), q(1), q(2), q(-1), Q::new(1.into(), 2.into())];
        (0..rng.gen_range(1..=2)).map(|_| (coeffs.choose(rng).unwrap().clone(), *ts.choose(rng).unwrap())).collect()
    } else {
        vec![(q(1), *ts.choose(rng).unwrap())]
    };
    Instance { monoid, order, phi, theta }
}

/// Solves `A c = b` over Q by elimination. Returns a solution, if any, and
/// the nullity of `A`.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> (Option<Vec<Q>>, usize) {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Q::one() / &m[row][c];
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let k = m[r][c].clone();
                for j in 0..=cols {
                    let d = &k * &m[row][j];
                    m[r][j] -= d;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let nullity = cols - pivots.len();
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return (None, nullity);
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    (Some(x), nullity)
}

/// Coordinates of `f` as a vector, whatever the enrichment.
pub fn coords(cat: &FiniteCategory, f: &Arrow) -> Vec<Q> {
    match &f.value {
        wellpoint::cat::Elem::Vector(v) => v.clone(),
        wellpoint::cat::Elem::Point(k) => (0..cat.hom_size(f.src, f.dst)).map(|i| q(i64::from(i == *k))).collect(),
    }
}

/// Every category with at most `max_objects` objects and `max_morphisms`
/// morphisms, as labelled composition tables (no isomorphism reduction
/// beyond fixing the order of objects by hom sizes).
pub fn all_categories(max_objects: usize, max_morphisms: usize) -> Vec<FiniteCategory> {
    let mut out = Vec::new();
    for n in 1..=max_objects {
        let mut sizes = vec![0usize; n * n];
        hom_sizes(n, max_morphisms, 0, &mut sizes, &mut out);
    }
    out
}

fn hom_sizes(n: usize, budget: usize, k: usize, sizes: &mut Vec<usize>, out: &mut Vec<FiniteCategory>) {
    if k == n * n {
        let thin_closed = (0..n).all(|i| (0..n).all(|j| (0..n).all(|l| sizes[i * n + j] == 0 || sizes[j * n + l] == 0 || sizes[i * n + l] > 0)));
        let diag: Vec<usize> = (0..n).map(|i| sizes[i * n + i]).collect();
        if thin_closed && diag.windows(2).all(|w| w[0] >= w[1]) {
            tables(n, sizes, out);
        }
        return;
    }
    let lo = usize::from(k / n == k % n);
    let used: usize = sizes[..k].iter().sum();
    let rest_min = (k + 1..n * n).filter(|r| r / n == r % n).count();
    for s in lo..=budget.saturating_sub(used + rest_min) {
        sizes[k] = s;
        hom_sizes(n, budget, k + 1, sizes, out);
    }
    sizes[k] = 0;
}

fn tables(n: usize, sizes: &[usize], out: &mut Vec<FiniteCategory>) {
    let mut mors: Vec<(usize, usize)> = Vec::new();
    let mut id = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                id[i] = mors.len();
            }
            mors.extend(std::iter::repeat_n((i, j), sizes[i * n + j]));
        }
    }
    let m = mors.len();
    let mut table = vec![vec![None; m]; m];
    let mut free = Vec::new();
    for f in 0..m {
        for g in 0..m {
            if mors[f].1 != mors[g].0 {
                continue;
            }
            if id.contains(&g) {
                table[g][f] = Some(f);
            } else if id.contains(&f) {
                table[g][f] = Some(g);
            } else {
                free.push((g, f));
            }
        }
    }
    fill(&mors, &id, &mut table, &free, 0, out);
}

fn associative(table: &[Vec<Option<usize>>]) -> bool {
    let m = table.len();
    for f in 0..m {
        for g in 0..m {
            let Some(gf) = table[g][f] else { continue };
            for h in 0..m {
                if let (Some(hg), Some(h_gf)) = (table[h][g], table[h][gf]) {
                    if let Some(hg_f) = table[hg][f] {
                        if hg_f != h_gf {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn fill(mors: &[(usize, usize)], id: &[usize], table: &mut Vec<Vec<Option<usize>>>, free: &[(usize, usize)], k: usize, out: &mut Vec<FiniteCategory>) {
    if !associative(table) {
        return;
    }
    if k == free.len() {
        let mut b = CategoryBuilder::new(format!("T{}", out.len()), Enrichment::Set);
        for i in 0..id.len() {
            b.object(format!("o{i}"));
        }
        for (x, &(s, d)) in mors.iter().enumerate() {
            if id.contains(&x) {
                b.identity(format!("id_o{s}"), s);
            } else {
                b.morphism(format!("a{x}"), s, d);
            }
        }
        for (g, row) in table.iter().enumerate() {
            for (f, h) in row.iter().enumerate() {
                if let Some(h) = h {
                    b.compose_to(g, f, *h).unwrap();
                }
            }
        }
        out.push(b.build().unwrap());
        return;
    }
    let (g, f) = free[k];
    let (src, dst) = (mors[f].0, mors[g].1);
    for h in 0..mors.len() {
        if mors[h] == (src, dst) {
            table[g][f] = Some(h);
            fill(mors, id, table, free, k + 1, out);
        }
    }
    table[g][f] = None;
}

/// Targets beyond the exhaustive range: every preorder on three labelled
/// elements, cyclic groups, transformation monoids and products `M × P`,
/// all within three objects and twelve morphisms. `samples` random draws
/// are made for the products; duplicates are dropped.
pub fn structured_targets(rng: &mut ChaCha8Rng, samples: usize) -> Vec<FiniteCategory> {
    let mut out = Vec::new();
    for bits in 0u32..64 {
        let rel = |i: usize, j: usize| -> bool {
            let pairs = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
            i == j || pairs.iter().position(|p| *p == (i, j)).is_some_and(|k| bits & (1 << k) != 0)
        };
        let transitive = (0..3).all(|i| (0..3).all(|j| (0..3).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k))));
        if transitive {
            out.push(wellpoint::cat::instances::preorder("P", &["a", "b", "c"], rel).unwrap());
        }
    }
    for n in 1..=12 {
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        out.push(Instance { monoid: Monoid { mul }, order: Preorder::point(), phi: vec![], theta: vec![] }.set_category());
    }
    let mut seen = Vec::new();
    for _ in 0..samples {
        let n = rng.gen_range(2..=3);
        let order = if rng.gen_bool(0.4) { Preorder::point() } else { Preorder::random(rng, n) };
        if order.pairs() > 12 {
            continue;
        }
        let k = rng.gen_range(2..=3);
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2)).map(|_| (0..k).map(|_| rng.gen_range(0..k)).collect()).collect();
        let Some(monoid) = Monoid::generated(k, &gens, 12 / order.pairs()) else { continue };
        let key = (monoid.mul.clone(), order.leq.clone());
        if monoid.size() * order.pairs() < 6 || seen.contains(&key) {
            continue;
        }
        seen.push(key);
        out.push(Instance { monoid, order, phi: vec![], theta: vec![] }.set_category());
    }
    out
}

/// Rank of a list of vectors.
pub fn rank(vs: &[Vec<Q>]) -> usize {
    let Some(len) = vs.first().map(Vec::len) else { return 0 };
    let rows: Vec<Vec<Q>> = (0..len).map(|r| vs.iter().map(|v| v[r].clone()).collect()).collect();
    vs.len() - solve(&rows, &vec![Q::zero(); len]).1
}

/// First repeat of `x, Ωx, Ω²x, ...`: (preperiod, period).
pub fn object_orbit(wp: &WellPointedEndo, x: usize) -> (usize, usize) {
    let mut seen = vec![x];
    loop {
        let next = wp.omega.obj(*seen.last().unwrap());
        if let Some(i) = seen.iter().position(|&o| o == next) {
            return (i, seen.len() - i);
        }
        seen.push(next);
    }
}

/// `Ω^n x` and the composite `θ`-chain `x -> Ω^n x`.
pub fn theta_chain(wp: &WellPointedEndo, x: usize, n: usize) -> (usize, Arrow) {
    let cat = wp.category();
    let (mut o, mut f) = (x, cat.identity(x));
    for _ in 0..n {
        f = cat.compose(wp.theta(o), &f).unwrap();
        o = wp.omega.obj(o);
    }
    (o, f)
}

/// Two-sided invertibility of `f`, by brute force (Set) or by solving the
/// linear equations for an inverse (Vect).
pub fn invertible(cat: &FiniteCategory, f: &Arrow) -> bool {
    let (a, b) = (f.src, f.dst);
    let (ida, idb) = (cat.identity(a), cat.identity(b));
    match cat.enrichment() {
        Enrichment::Set => cat.hom_arrows(b, a).iter().any(|g| cat.compose(g, f).unwrap() == ida && cat.compose(f, g).unwrap() == idb),
        Enrichment::Vect => {
            let basis = cat.hom_arrows(b, a);
            let rows = |cols: Vec<Vec<Q>>, n: usize| -> Vec<Vec<Q>> { (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect() };
            let left: Vec<Vec<Q>> = basis.iter().map(|g| coords(cat, &cat.compose(g, f).unwrap())).collect();
            let right: Vec<Vec<Q>> = basis.iter().map(|g| coords(cat, &cat.compose(f, g).unwrap())).collect();
            let mut system = rows(left, cat.hom_size(a, a));
            system.extend(rows(right, cat.hom_size(b, b)));
            let rhs: Vec<Q> = coords(cat, &ida).into_iter().chain(coords(cat, &idb)).collect();
            !basis.is_empty() && solve(&system, &rhs).0.is_some()
        }
    }
}

/// `c: F => G` is natural with invertible components.
pub fn natural_iso(f: &Functor, g: &Functor, c: &[Arrow]) -> bool {
    let (src, dst) = (&f.src, &f.dst);
    let typed = src.objects().all(|x| c[x].src == f.obj(x) && c[x].dst == g.obj(x) && invertible(dst, &c[x]));
    typed
        && (0..src.morphism_count()).all(|m| {
            let d = src.morphism(m);
            dst.compose(&c[d.dst], f.basis_image(m)).unwrap() == dst.compose(g.basis_image(m), &c[d.src]).unwrap()
        })
}

/// Counit naturality and both triangle identities of a coreflection.
pub fn coreflection_holds(cat: &FiniteCategory, r: &wellpoint::cat::coreflect::Coreflection) -> bool {
    let unit = |t: usize| r.unit.iter().find(|(o, _)| *o == t).map(|(_, u)| u);
    let natural = (0..cat.morphism_count()).all(|m| {
        let d = cat.morphism(m);
        cat.compose(&r.counit[d.dst], r.functor.basis_image(m)).unwrap() == cat.compose(&cat.basis_arrow(m), &r.counit[d.src]).unwrap()
    });
    let first = r.unit.iter().all(|(t, u)| cat.compose(&r.counit[*t], u).unwrap() == cat.identity(*t));
    let second = cat.objects().all(|x| {
        let rx = r.functor.obj(x);
        unit(rx).is_some_and(|u| cat.compose(&r.functor.apply(&r.counit[x]).unwrap(), u).unwrap() == cat.identity(rx))
    });
    natural && first && second
}
