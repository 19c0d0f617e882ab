//! Eventually periodic ℕ-indexed diagrams of finite hom-objects and their
//! sequential colimits and limits.
//!
//! A diagram is presented by stages `0..q+p` and one link out of every
//! presented stage; the link out of stage `q+p-1` closes the loop back to
//! stage `q`. Absolute stage `n` is presented by item
//! `min(n, q + (n - q) mod p)`.
//!
//! Both the colimit of such a sequence and the limit of such a tower are the
//! eventual image `E = im(g^N)` of the loop composite `g` on stage `q`, where
//! `N` is the size (or dimension) of that stage. Classes are represented by
//! elements of `E` read at anchor time 0 (absolute stage `q`); the leg out of
//! (resp. into) absolute stage `q + k p` carries a factor `(g|E)^{-k}`.

use serde::Serialize;

use crate::cat::Elem;
use crate::error::{Error, Result};
use crate::linalg::{coordinates, Matrix, Q};

/// A finite hom-object: a set of the given size or a space of the given
/// dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "size", rename_all = "lowercase")]
pub enum Carrier {
    Set(usize),
    Vect(usize),
}

impl Carrier {
    pub fn size(&self) -> usize {
        match *self {
            Carrier::Set(n) | Carrier::Vect(n) => n,
        }
    }

    /// All elements (set) or the standard basis (space).
    pub fn elements(&self) -> Vec<Elem> {
        match *self {
            Carrier::Set(n) => (0..n).map(Elem::Point).collect(),
            Carrier::Vect(n) => (0..n).map(|i| Elem::Vector(crate::linalg::unit(n, i))).collect(),
        }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (self, e) {
            (Carrier::Set(n), Elem::Point(i)) => i < n,
            (Carrier::Vect(n), Elem::Vector(v)) => v.len() == *n,
            _ => false,
        }
    }
}

/// A map between carriers: a function on points or a matrix acting on
/// column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Map {
    Fun { dst_size: usize, images: Vec<usize> },
    Lin(Matrix),
}

impl Map {
    pub fn identity(c: Carrier) -> Map {
        match c {
            Carrier::Set(n) => Map::Fun { dst_size: n, images: (0..n).collect() },
            Carrier::Vect(n) => Map::Lin(Matrix::identity(n)),
        }
    }

    pub fn source(&self) -> Carrier {
        match self {
            Map::Fun { images, .. } => Carrier::Set(images.len()),
            Map::Lin(m) => Carrier::Vect(m.cols()),
        }
    }

    pub fn target(&self) -> Carrier {
        match self {
            Map::Fun { dst_size, .. } => Carrier::Set(*dst_size),
            Map::Lin(m) => Carrier::Vect(m.rows()),
        }
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        match (self, e) {
            (Map::Fun { images, .. }, Elem::Point(i)) => Elem::Point(images[*i]),
            (Map::Lin(m), Elem::Vector(v)) => Elem::Vector(m.apply(v)),
            _ => panic!("map applied to an element of the wrong kind"),
        }
    }

    /// `self o first`.
    pub fn after(&self, first: &Map) -> Map {
        match (self, first) {
            (Map::Fun { dst_size, images: g }, Map::Fun { images: f, .. }) => {
                Map::Fun { dst_size: *dst_size, images: f.iter().map(|&i| g[i]).collect() }
            }
            (Map::Lin(g), Map::Lin(f)) => Map::Lin(g.mul(f)),
            _ => panic!("mixed set and linear maps"),
        }
    }

    pub fn pow(&self, n: usize) -> Map {
        let mut acc = Map::identity(self.source());
        for _ in 0..n {
            acc = self.after(&acc);
        }
        acc
    }

    /// Builds a map from its action on the elements (set) or basis (space)
    /// of `src`, given as a closure.
    pub fn tabulate(src: Carrier, dst: Carrier, f: impl Fn(&Elem) -> Result<Elem>) -> Result<Map> {
        match (src, dst) {
            (Carrier::Set(n), Carrier::Set(m)) => {
                let images = (0..n)
                    .map(|i| match f(&Elem::Point(i))? {
                        Elem::Point(j) if j < m => Ok(j),
                        _ => Err(Error::TypeMismatch("tabulated image out of range".into())),
                    })
                    .collect::<Result<_>>()?;
                Ok(Map::Fun { dst_size: m, images })
            }
            (Carrier::Vect(n), Carrier::Vect(m)) => {
                let cols = (0..n)
                    .map(|i| match f(&Elem::Vector(crate::linalg::unit(n, i)))? {
                        Elem::Vector(v) if v.len() == m => Ok(v),
                        _ => Err(Error::TypeMismatch("tabulated image has the wrong dimension".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Map::Lin(if n == 0 { Matrix::zeros(m, 0) } else { Matrix::from_columns(m, &cols) }))
            }
            _ => Err(Error::EnrichmentMismatch("tabulate across enrichments".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Links go `stage i -> stage next(i)`.
    Forward,
    /// Links go `stage next(i) -> stage i`.
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpSequence {
    pub stages: Vec<Carrier>,
    pub links: Vec<Map>,
    pub preperiod: usize,
    pub direction: Direction,
}

impl EpSequence {
    pub fn new(stages: Vec<Carrier>, links: Vec<Map>, preperiod: usize, direction: Direction) -> Result<Self> {
        let s = Self { stages, links, preperiod, direction };
        s.check()?;
        Ok(s)
    }

    /// Constant diagram on one carrier with loop map `g`.
    pub fn constant_loop(c: Carrier, g: Map, direction: Direction) -> Result<Self> {
        Self::new(vec![c], vec![g], 0, direction)
    }

    pub fn period(&self) -> usize {
        self.stages.len() - self.preperiod
    }

    pub fn item(&self, n: usize) -> usize {
        let q = self.preperiod;
        if n < q {
            n
        } else {
            q + (n - q) % self.period()
        }
    }

    pub fn next(&self, i: usize) -> usize {
        if i + 1 < self.stages.len() {
            i + 1
        } else {
            self.preperiod
        }
    }

    pub fn stage(&self, n: usize) -> Carrier {
        self.stages[self.item(n)]
    }

    /// Link out of (forward) or into (backward) absolute stage `n`.
    pub fn link(&self, n: usize) -> &Map {
        &self.links[self.item(n)]
    }

    fn check(&self) -> Result<()> {
        if self.stages.is_empty() || self.preperiod >= self.stages.len() {
            return Err(Error::Malformed("sequence needs a period of at least 1".into()));
        }
        if self.links.len() != self.stages.len() {
            return Err(Error::Malformed("one link per presented stage is required".into()));
        }
        for (i, l) in self.links.iter().enumerate() {
            let (a, b) = (self.stages[i], self.stages[self.next(i)]);
            let (src, dst) = match self.direction {
                Direction::Forward => (a, b),
                Direction::Backward => (b, a),
            };
            if l.source() != src || l.target() != dst {
                return Err(Error::TypeMismatch(format!("link {i} does not match its stages")));
            }
        }
        Ok(())
    }

    /// The loop composite on stage `q`.
    pub fn loop_map(&self) -> Map {
        let q = self.preperiod;
        let p = self.period();
        let mut g = Map::identity(self.stages[q]);
        match self.direction {
            Direction::Forward => {
                for i in q..q + p {
                    g = self.links[i].after(&g);
                }
            }
            Direction::Backward => {
                for i in q..q + p {
                    g = g.after(&self.links[i]);
                }
            }
        }
        g
    }
}

/// The stable image of an endomap of a finite carrier, with the induced
/// automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventualImage {
    pub ambient: Carrier,
    repr: ImageRepr,
    /// Smallest `k` with `im g^k = im g^{k+1}`.
    pub stabilisation_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ImageRepr {
    Set { members: Vec<usize>, perm: Vec<usize>, inv: Vec<usize> },
    Vect { basis: Vec<Vec<Q>>, auto: Matrix, inv: Matrix },
}

impl EventualImage {
    pub fn of(g: &Map) -> Result<Self> {
        let ambient = g.source();
        if g.target() != ambient {
            return Err(Error::TypeMismatch("eventual image of a non-endomap".into()));
        }
        match g {
            Map::Fun { images, .. } => {
                let n = images.len();
                let mut current: Vec<usize> = (0..n).collect();
                let mut sizes = vec![n];
                for _ in 0..n {
                    let mut next: Vec<usize> = current.iter().map(|&x| images[x]).collect();
                    next.sort_unstable();
                    next.dedup();
                    sizes.push(next.len());
                    current = next;
                }
                let stabilisation_index = (0..sizes.len()).find(|&k| k + 1 >= sizes.len() || sizes[k] == sizes[k + 1]).unwrap_or(0);
                let members = current;
                let pos = |x: usize| members.binary_search(&x).expect("image is invariant");
                let perm: Vec<usize> = members.iter().map(|&x| pos(images[x])).collect();
                let mut inv = vec![0; perm.len()];
                for (i, &j) in perm.iter().enumerate() {
                    inv[j] = i;
                }
                Ok(Self { ambient, repr: ImageRepr::Set { members, perm, inv }, stabilisation_index })
            }
            Map::Lin(m) => {
                let n = m.cols();
                let mut ranks = vec![n];
                let mut power = Matrix::identity(n);
                for _ in 0..n {
                    power = m.mul(&power);
                    ranks.push(power.rank());
                }
                let stabilisation_index = (0..ranks.len()).find(|&k| k + 1 >= ranks.len() || ranks[k] == ranks[k + 1]).unwrap_or(0);
                let basis = if n == 0 { Vec::new() } else { power.column_space() };
                let cols: Vec<Vec<Q>> = basis
                    .iter()
                    .map(|b| coordinates(&basis, &m.apply(b)).expect("image is invariant"))
                    .collect();
                let r = basis.len();
                let auto = if r == 0 { Matrix::zeros(0, 0) } else { Matrix::from_columns(r, &cols) };
                let inv = if r == 0 { Matrix::zeros(0, 0) } else { auto.inverse().expect("g is invertible on its eventual image") };
                Ok(Self { ambient, repr: ImageRepr::Vect { basis, auto, inv }, stabilisation_index })
            }
        }
    }

    pub fn carrier(&self) -> Carrier {
        match &self.repr {
            ImageRepr::Set { members, .. } => Carrier::Set(members.len()),
            ImageRepr::Vect { basis, .. } => Carrier::Vect(basis.len()),
        }
    }

    /// The ambient element represented by `e`.
    pub fn include(&self, e: &Elem) -> Elem {
        match (&self.repr, e) {
            (ImageRepr::Set { members, .. }, Elem::Point(i)) => Elem::Point(members[*i]),
            (ImageRepr::Vect { basis, .. }, Elem::Vector(c)) => {
                let n = self.ambient.size();
                let mut v = vec![Q::from_integer(0.into()); n];
                for (coef, b) in c.iter().zip(basis) {
                    crate::linalg::add_assign(&mut v, &crate::linalg::scale(b, coef));
                }
                Elem::Vector(v)
            }
            _ => panic!("element of the wrong kind"),
        }
    }

    /// Inclusion `E -> ambient` as a map.
    pub fn inclusion(&self) -> Map {
        Map::tabulate(self.carrier(), self.ambient, |e| Ok(self.include(e))).expect("inclusion tabulates")
    }

    /// `e` as an element of `E`, if it lies there.
    pub fn locate(&self, x: &Elem) -> Option<Elem> {
        match (&self.repr, x) {
            (ImageRepr::Set { members, .. }, Elem::Point(i)) => members.binary_search(i).ok().map(Elem::Point),
            (ImageRepr::Vect { basis, .. }, Elem::Vector(v)) => coordinates(basis, v).map(Elem::Vector),
            _ => None,
        }
    }

    /// `(g|E)^k` applied to `e`, for any integer `k`.
    pub fn auto_pow(&self, e: &Elem, k: i64) -> Elem {
        match (&self.repr, e) {
            (ImageRepr::Set { perm, inv, .. }, Elem::Point(i)) => {
                let table = if k >= 0 { perm } else { inv };
                let mut x = *i;
                // reduce by the orbit length of x
                let mut orbit = 1;
                let mut y = perm[x];
                while y != x {
                    y = perm[y];
                    orbit += 1;
                }
                for _ in 0..(k.unsigned_abs() % orbit as u64) {
                    x = table[x];
                }
                Elem::Point(x)
            }
            (ImageRepr::Vect { auto, inv, .. }, Elem::Vector(c)) => {
                let m = if k >= 0 { auto } else { inv };
                let mut v = c.clone();
                for _ in 0..k.unsigned_abs() {
                    v = m.apply(&v);
                }
                Elem::Vector(v)
            }
            _ => panic!("element of the wrong kind"),
        }
    }

    /// The induced automorphism as a map on `E`.
    pub fn automorphism(&self) -> Map {
        Map::tabulate(self.carrier(), self.carrier(), |e| Ok(self.auto_pow(e, 1))).expect("tabulates")
    }
}

/// Colimit of a forward ep-sequence.
#[derive(Clone, Debug)]
pub struct SeqColimit {
    pub seq: EpSequence,
    pub image: EventualImage,
    loop_map: Map,
}

impl SeqColimit {
    pub fn carrier(&self) -> Carrier {
        self.image.carrier()
    }

    /// Anchor absolute stage at or after `n`, and its loop count `k`.
    fn anchor(&self, n: usize) -> (usize, usize) {
        let q = self.seq.preperiod;
        let p = self.seq.period();
        if n <= q {
            return (q, 0);
        }
        let k = (n - q).div_ceil(p);
        (q + k * p, k)
    }

    /// Leg out of absolute stage `n`.
    pub fn leg(&self, n: usize, x: &Elem) -> Elem {
        let (a, k) = self.anchor(n);
        let mut y = x.clone();
        for m in n..a {
            y = self.seq.link(m).apply(&y);
        }
        let n_pow = self.image.ambient.size();
        let stable = self.loop_map.pow(n_pow).apply(&y);
        let e = self.image.locate(&stable).expect("g^N lands in the eventual image");
        self.image.auto_pow(&e, -((k + n_pow) as i64))
    }

    /// The leg out of absolute stage `n` as a map.
    pub fn leg_map(&self, n: usize) -> Map {
        Map::tabulate(self.seq.stage(n), self.carrier(), |x| Ok(self.leg(n, x))).expect("leg tabulates")
    }

    /// Ambient element of stage `q` representing a class.
    pub fn representative(&self, e: &Elem) -> Elem {
        self.image.include(e)
    }

    /// Checks `leg_{n+1} o link_n = leg_n` on `0..q + 2p`.
    pub fn verify_cocone(&self) -> bool {
        let upto = self.seq.preperiod + 2 * self.seq.period();
        (0..upto).all(|n| {
            self.seq
                .stage(n)
                .elements()
                .iter()
                .all(|x| self.leg(n + 1, &self.seq.link(n).apply(x)) == self.leg(n, x))
        })
    }
}

pub fn sequential_colimit(seq: &EpSequence) -> Result<SeqColimit> {
    if seq.direction != Direction::Forward {
        return Err(Error::Precondition("colimit needs a forward sequence".into()));
    }
    seq.check()?;
    let g = seq.loop_map();
    let image = EventualImage::of(&g)?;
    Ok(SeqColimit { seq: seq.clone(), image, loop_map: g })
}

/// Limit of a backward ep-tower.
#[derive(Clone, Debug)]
pub struct SeqLimit {
    pub tower: EpSequence,
    pub image: EventualImage,
}

impl SeqLimit {
    pub fn carrier(&self) -> Carrier {
        self.image.carrier()
    }

    /// Component at absolute stage `n` of the compatible family `e`.
    pub fn leg(&self, n: usize, e: &Elem) -> Elem {
        let q = self.tower.preperiod;
        let p = self.tower.period();
        let (a, k) = if n <= q { (q, 0) } else { let k = (n - q).div_ceil(p); (q + k * p, k) };
        let mut y = self.image.include(&self.image.auto_pow(e, -(k as i64)));
        for m in (n..a).rev() {
            y = self.tower.link(m).apply(&y);
        }
        y
    }

    pub fn leg_map(&self, n: usize) -> Map {
        Map::tabulate(self.carrier(), self.tower.stage(n), |e| Ok(self.leg(n, e))).expect("leg tabulates")
    }

    pub fn representative(&self, e: &Elem) -> Elem {
        self.image.include(e)
    }

    /// The element of the limit whose anchor component is `x`, if `x` is the
    /// anchor component of some compatible family.
    pub fn locate(&self, x: &Elem) -> Option<Elem> {
        self.image.locate(x)
    }

    /// Checks `link_n o leg_{n+1} = leg_n` on `0..q + 2p`.
    pub fn verify_cone(&self) -> bool {
        let upto = self.tower.preperiod + 2 * self.tower.period();
        self.carrier().elements().iter().all(|e| {
            (0..upto).all(|n| self.tower.link(n).apply(&self.leg(n + 1, e)) == self.leg(n, e))
        })
    }
}

pub fn sequential_limit(tower: &EpSequence) -> Result<SeqLimit> {
    if tower.direction != Direction::Backward {
        return Err(Error::Precondition("limit needs a backward tower".into()));
    }
    tower.check()?;
    let image = EventualImage::of(&tower.loop_map())?;
    Ok(SeqLimit { tower: tower.clone(), image })
}

/// Brent's cycle detection: returns `(mu, lambda)`, the index of the first
/// state on the cycle and the cycle length, both minimal.
pub fn brent<S: Clone + PartialEq>(x0: &S, f: impl Fn(&S) -> S) -> (usize, usize) {
    let mut power = 1;
    let mut lam = 1;
    let mut tortoise = x0.clone();
    let mut hare = f(x0);
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = f(&hare);
        lam += 1;
    }
    let mut tortoise = x0.clone();
    let mut hare = x0.clone();
    for _ in 0..lam {
        hare = f(&hare);
    }
    let mut mu = 0;
    while tortoise != hare {
        tortoise = f(&tortoise);
        hare = f(&hare);
        mu += 1;
    }
    (mu, lam)
}

/// Runs a deterministic state machine to its cycle and returns the states
/// `0..mu+lambda` together with `(mu, lambda)`.
pub fn unroll<S: Clone + PartialEq>(x0: S, f: impl Fn(&S) -> S) -> (Vec<S>, usize, usize) {
    let (mu, lam) = brent(&x0, &f);
    let mut states = Vec::with_capacity(mu + lam);
    let mut x = x0;
    for _ in 0..mu + lam {
        let next = f(&x);
        states.push(x);
        x = next;
    }
    (states, mu, lam)
}

/// Preperiod and period of the orbit of `x` under an endofunctor, detected on
/// the pair (object, action of the functor on that object's endomorphisms).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub preperiod: usize,
    pub period: usize,
    pub objects: Vec<usize>,
    /// The functor's action on endomorphisms agrees at stages `q` and `q+p`.
    pub morphism_loop_closes: bool,
}

pub fn detect_orbit(omega: &crate::cat::Functor, x: usize) -> Orbit {
    let cat = &omega.src;
    let fingerprint = |o: usize| -> Vec<crate::cat::Arrow> {
        cat.hom_arrows(o, o).iter().map(|f| omega.apply(f).expect("functor applies")).collect()
    };
    let state0 = (x, fingerprint(x));
    let (states, mu, lam) = unroll(state0, |(o, _)| {
        let n = omega.obj(*o);
        (n, fingerprint(n))
    });
    let closing = omega.obj(states[mu + lam - 1].0);
    let morphism_loop_closes = closing == states[mu].0 && fingerprint(closing) == states[mu].1;
    Orbit {
        preperiod: mu,
        period: lam,
        objects: states.into_iter().map(|(o, _)| o).collect(),
        morphism_loop_closes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, Matrix};

    fn fun(images: &[usize]) -> Map {
        Map::Fun { dst_size: images.len(), images: images.to_vec() }
    }

    #[test]
    fn eventual_image_of_collapsing_loop() {
        // g(1)=2, g(2)=3, g(3)=3 on {1,2,3} -> indices 0,1,2
        let g = fun(&[1, 2, 2]);
        let e = EventualImage::of(&g).unwrap();
        assert_eq!(e.carrier(), Carrier::Set(1));
        assert_eq!(e.include(&Elem::Point(0)), Elem::Point(2));
        assert_eq!(e.stabilisation_index, 2);
        let seq = EpSequence::constant_loop(Carrier::Set(3), g.clone(), Direction::Forward).unwrap();
        let colim = sequential_colimit(&seq).unwrap();
        assert_eq!(colim.carrier(), Carrier::Set(1));
        assert!(colim.verify_cocone());
        let tower = EpSequence::constant_loop(Carrier::Set(3), g, Direction::Backward).unwrap();
        let lim = sequential_limit(&tower).unwrap();
        assert_eq!(lim.carrier(), Carrier::Set(1));
        assert!(lim.verify_cone());
    }

    #[test]
    fn constant_identity_sequence() {
        let seq = EpSequence::constant_loop(Carrier::Set(4), Map::identity(Carrier::Set(4)), Direction::Forward).unwrap();
        let c = sequential_colimit(&seq).unwrap();
        assert_eq!(c.carrier(), Carrier::Set(4));
        assert_eq!(c.leg(7, &Elem::Point(3)), Elem::Point(3));
    }

    #[test]
    fn projection_limit_is_one_dimensional() {
        let p = Map::Lin(Matrix::from_rows(vec![vec![q(1), q(0)], vec![q(0), q(0)]]));
        let tower = EpSequence::constant_loop(Carrier::Vect(2), p, Direction::Backward).unwrap();
        let lim = sequential_limit(&tower).unwrap();
        assert_eq!(lim.carrier(), Carrier::Vect(1));
        assert!(lim.verify_cone());
    }

    #[test]
    fn scalar_loop_legs_carry_time_factor() {
        let two = Map::Lin(Matrix::from_rows(vec![vec![q(2)]]));
        let seq = EpSequence::constant_loop(Carrier::Vect(1), two, Direction::Forward).unwrap();
        let c = sequential_colimit(&seq).unwrap();
        assert!(c.verify_cocone());
        // x at stage 0 and 2x at stage 1 are the same class
        assert_eq!(c.leg(0, &Elem::Vector(vec![q(1)])), c.leg(1, &Elem::Vector(vec![q(2)])));
        assert_eq!(c.leg(0, &Elem::Vector(vec![q(1)])), Elem::Vector(vec![q(1)]));
    }

    #[test]
    fn preperiod_and_period_are_used() {
        // 2-element stage 0 maps into a 3-cycle
        let seq = EpSequence::new(
            vec![Carrier::Set(2), Carrier::Set(3)],
            vec![Map::Fun { dst_size: 3, images: vec![0, 0] }, fun(&[1, 2, 0])],
            1,
            Direction::Forward,
        )
        .unwrap();
        let c = sequential_colimit(&seq).unwrap();
        assert_eq!(c.carrier(), Carrier::Set(3));
        assert!(c.verify_cocone());
        assert_eq!(c.leg(0, &Elem::Point(0)), c.leg(0, &Elem::Point(1)));
    }

    #[test]
    fn brent_finds_rho_shape() {
        let f = |x: &usize| if *x < 5 { x + 1 } else { 3 };
        assert_eq!(brent(&0, f), (3, 3));
        assert_eq!(brent(&0, |x: &usize| *x), (0, 1));
        let swap = |x: &usize| 1 - *x;
        assert_eq!(brent(&0, swap), (0, 2));
    }

    #[test]
    fn malformed_links_rejected() {
        let bad = EpSequence::new(vec![Carrier::Set(2)], vec![fun(&[0, 1, 2])], 0, Direction::Forward);
        assert!(bad.is_err());
    }
}
