use std::collections::BTreeMap;
use std::fmt;
use std::ops::AddAssign;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use super::glue::glue;
use super::poly::PolyT;
use crate::combinatorics::SetPartition;
use crate::error::{invalid, Error, Result};

/// A basic object `[X]`: the ordered finite set `{0, .., size-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CatObject(pub usize);

impl CatObject {
    pub const UNIT: CatObject = CatObject(0);

    pub fn size(self) -> usize {
        self.0
    }

    /// `X ⊗ Y`: the left factor occupies the first `|X|` positions.
    pub fn tensor(self, other: CatObject) -> CatObject {
        CatObject(self.0 + other.0)
    }

    /// The dual object. Every basic object is its own dual.
    pub fn dual(self) -> CatObject {
        self
    }
}

/// A morphism `X -> Y`: a finite `Q[t]`-linear combination of partitions of
/// `X ⊔ Y`, where the source elements come first.
///
/// Zero coefficients are never stored, so equality of morphisms is equality
/// of their term maps.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MorphismJson", try_from = "MorphismJson")]
pub struct Morphism {
    source: CatObject,
    target: CatObject,
    terms: BTreeMap<SetPartition, PolyT>,
}

fn add_term<C: Zero + for<'a> AddAssign<&'a C>>(
    terms: &mut BTreeMap<SetPartition, C>,
    p: SetPartition,
    c: C,
) {
    if c.is_zero() {
        return;
    }
    match terms.entry(p) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Bilinear composition on term maps; `weight(a, b, gamma)` yields the
/// coefficient of the glued basis element.
fn compose_terms<C, F>(
    beta: &BTreeMap<SetPartition, C>,
    alpha: &BTreeMap<SetPartition, C>,
    (x, y, z): (usize, usize, usize),
    weight: F,
) -> BTreeMap<SetPartition, C>
where
    C: Zero + for<'a> AddAssign<&'a C>,
    F: Fn(&C, &C, u32) -> C,
{
    let mut out = BTreeMap::new();
    for (pa, ca) in alpha {
        for (pb, cb) in beta {
            let g = glue(pa, pb, x, y, z).expect("sizes checked by caller");
            add_term(&mut out, g.partition, weight(ca, cb, g.gamma));
        }
    }
    out
}

/// Relabels a partition of `X ⊔ X'` and one of `Y ⊔ Y'` into a partition
/// of `(X ⊔ Y) ⊔ (X' ⊔ Y')`.
fn tensor_partition(
    a: &SetPartition,
    (x, x2): (usize, usize),
    b: &SetPartition,
    (y, y2): (usize, usize),
) -> SetPartition {
    let total = x + y + x2 + y2;
    let offset = a.num_blocks() as u32;
    let mut labels = vec![0u32; total];
    for (i, &blk) in a.rgs().iter().enumerate() {
        let pos = if i < x { i } else { x + y + (i - x) };
        labels[pos] = blk;
    }
    for (j, &blk) in b.rgs().iter().enumerate() {
        let pos = if j < y { x + j } else { x + y + x2 + (j - y) };
        labels[pos] = blk + offset;
    }
    debug_assert_eq!(x2 + y2 + x + y, labels.len());
    SetPartition::from_labels(&labels)
}

/// Swaps the two sides: a partition of `X ⊔ Y` becomes one of `Y ⊔ X`.
fn transpose_partition(p: &SetPartition, x: usize, y: usize) -> SetPartition {
    let labels: Vec<u32> = (0..x + y)
        .map(|i| if i < y { p.block_of(x + i) } else { p.block_of(i - y) })
        .collect();
    SetPartition::from_labels(&labels)
}

/// The relation of the identity map on `{0..n}`: `i ~ n + i`.
fn identity_relation(n: usize) -> SetPartition {
    let labels: Vec<usize> = (0..2 * n).map(|i| i % n.max(1)).collect();
    SetPartition::from_labels(&labels)
}

impl Morphism {
    pub fn zero(source: CatObject, target: CatObject) -> Self {
        Morphism {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis element with coefficient 1.
    pub fn basis(source: CatObject, target: CatObject, p: SetPartition) -> Result<Self> {
        Self::from_terms(source, target, [(p, PolyT::one())])
    }

    /// Collects like terms and drops zeros; every partition must live on
    /// `|source| + |target|` points.
    pub fn from_terms(
        source: CatObject,
        target: CatObject,
        terms: impl IntoIterator<Item = (SetPartition, PolyT)>,
    ) -> Result<Self> {
        let n = source.size() + target.size();
        let mut map = BTreeMap::new();
        for (p, c) in terms {
            if p.ground_size() != n {
                return Err(Error::Mismatch(format!(
                    "term {p} has ground size {}, expected {n}",
                    p.ground_size()
                )));
            }
            add_term(&mut map, p, c);
        }
        Ok(Morphism {
            source,
            target,
            terms: map,
        })
    }

    pub fn source(&self) -> CatObject {
        self.source
    }

    pub fn target(&self) -> CatObject {
        self.target
    }

    pub fn terms(&self) -> &BTreeMap<SetPartition, PolyT> {
        &self.terms
    }

    pub fn coefficient(&self, p: &SetPartition) -> PolyT {
        self.terms.get(p).cloned().unwrap_or_else(PolyT::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `id_X`.
    pub fn identity(x: CatObject) -> Self {
        Self::basis(x, x, identity_relation(x.size())).expect("sizes match")
    }

    /// `ev_X : D(X) ⊗ X -> 1`, the identity relation on `X ⊔ X`.
    pub fn ev(x: CatObject) -> Self {
        Self::basis(x.dual().tensor(x), CatObject::UNIT, identity_relation(x.size()))
            .expect("sizes match")
    }

    /// `coev_X : 1 -> X ⊗ D(X)`, the identity relation on `X ⊔ X`.
    pub fn coev(x: CatObject) -> Self {
        Self::basis(CatObject::UNIT, x.tensor(x.dual()), identity_relation(x.size()))
            .expect("sizes match")
    }

    /// The morphism `Y -> X` attached to a set map `f : X -> Y`, given as
    /// `f[i]` = image of `i`, with `|Y| = codomain`. It is the partition of
    /// `Y ⊔ X` generated by `x ~ f(x)`.
    pub fn from_map(f: &[usize], codomain: usize) -> Result<Self> {
        if let Some(&bad) = f.iter().find(|&&v| v >= codomain) {
            return invalid(format!("map value {bad} outside codomain of size {codomain}"));
        }
        let mut labels: Vec<usize> = (0..codomain).collect();
        labels.extend_from_slice(f);
        Self::basis(
            CatObject(codomain),
            CatObject(f.len()),
            SetPartition::from_labels(&labels),
        )
    }

    /// `self ∘ alpha`, i.e. first `alpha : X -> Y`, then `self : Y -> Z`.
    ///
    /// Basis elements compose to `t^gamma` times the glued partition.
    pub fn compose(&self, alpha: &Morphism) -> Result<Morphism> {
        if alpha.target != self.source {
            return Err(Error::Mismatch(format!(
                "cannot compose {:?} -> {:?} after {:?} -> {:?}",
                self.source, self.target, alpha.source, alpha.target
            )));
        }
        let sizes = (alpha.source.size(), self.source.size(), self.target.size());
        let terms = compose_terms(&self.terms, &alpha.terms, sizes, |a, b, g| {
            (a * b).shift(g as usize)
        });
        Ok(Morphism {
            source: alpha.source,
            target: self.target,
            terms,
        })
    }

    /// `self ⊗ other : X ⊗ Y -> X' ⊗ Y'`.
    pub fn tensor(&self, other: &Morphism) -> Morphism {
        let xs = (self.source.size(), self.target.size());
        let ys = (other.source.size(), other.target.size());
        let mut terms = BTreeMap::new();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                add_term(&mut terms, tensor_partition(pa, xs, pb, ys), ca * cb);
            }
        }
        Morphism {
            source: self.source.tensor(other.source),
            target: self.target.tensor(other.target),
            terms,
        }
    }

    /// `α^t : Y -> X`, the same relation read from the other side.
    pub fn transpose(&self) -> Morphism {
        let (x, y) = (self.source.size(), self.target.size());
        Morphism {
            source: self.target,
            target: self.source,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (transpose_partition(p, x, y), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::Mismatch("cannot add morphisms between different objects".into()));
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            add_term(&mut out.terms, p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &PolyT) -> Morphism {
        let mut out = Morphism::zero(self.source, self.target);
        for (p, a) in &self.terms {
            add_term(&mut out.terms, p.clone(), a * c);
        }
        out
    }

    /// Evaluates every coefficient at `t = value`.
    pub fn specialize(&self, value: &BigRational) -> SpecializedMorphism {
        let mut terms = BTreeMap::new();
        for (p, c) in &self.terms {
            add_term(&mut terms, p.clone(), c.eval(value));
        }
        SpecializedMorphism {
            t: value.clone(),
            source: self.source,
            target: self.target,
            terms,
        }
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism[{} -> {}](", self.source.0, self.target.0)?;
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]{p}")?;
        }
        write!(f, ")")
    }
}

/// A morphism of the category with `t` replaced by a fixed rational.
/// Composition multiplies by `t^gamma` numerically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedMorphism {
    t: BigRational,
    source: CatObject,
    target: CatObject,
    terms: BTreeMap<SetPartition, BigRational>,
}

impl SpecializedMorphism {
    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn terms(&self) -> &BTreeMap<SetPartition, BigRational> {
        &self.terms
    }

    pub fn compose(&self, alpha: &SpecializedMorphism) -> Result<SpecializedMorphism> {
        if alpha.target != self.source || alpha.t != self.t {
            return Err(Error::Mismatch(
                "specialized morphisms are not composable (objects or t differ)".into(),
            ));
        }
        let sizes = (alpha.source.size(), self.source.size(), self.target.size());
        let t = &self.t;
        let terms = compose_terms(&self.terms, &alpha.terms, sizes, |a, b, g| {
            a * b * Pow::pow(t, g)
        });
        Ok(SpecializedMorphism {
            t: self.t.clone(),
            source: alpha.source,
            target: self.target,
            terms,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    rgs: Vec<u32>,
    coeffs: Vec<String>,
}

/// Wire form: `{source_size, target_size, terms: [{rgs, coeffs}]}` with
/// coefficients as rational strings by increasing degree in `t`.
#[derive(Serialize, Deserialize)]
struct MorphismJson {
    source_size: usize,
    target_size: usize,
    terms: Vec<TermJson>,
}

impl From<Morphism> for MorphismJson {
    fn from(m: Morphism) -> Self {
        MorphismJson {
            source_size: m.source.size(),
            target_size: m.target.size(),
            terms: m
                .terms
                .into_iter()
                .map(|(p, c)| TermJson {
                    coeffs: c.to_strings(),
                    rgs: p.into(),
                })
                .collect(),
        }
    }
}

impl TryFrom<MorphismJson> for Morphism {
    type Error = Error;
    fn try_from(j: MorphismJson) -> Result<Self> {
        let terms = j
            .terms
            .into_iter()
            .map(|t| Ok((SetPartition::from_rgs(t.rgs)?, PolyT::from_strings(&t.coeffs)?)))
            .collect::<Result<Vec<_>>>()?;
        Morphism::from_terms(CatObject(j.source_size), CatObject(j.target_size), terms)
    }
}

impl Morphism {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("morphisms always serialize")
    }

    pub fn from_json(s: &str) -> Result<Morphism> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("morphism JSON: {e}")))
    }
}

/// `t` evaluated at an integer, as an exact rational.
pub fn t_at(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_set_partitions;

    fn obj(n: usize) -> CatObject {
        CatObject(n)
    }

    #[test]
    fn loop_gives_t() {
        let single = SetPartition::single_block(1);
        let a = Morphism::basis(obj(0), obj(1), single.clone()).unwrap();
        let b = Morphism::basis(obj(1), obj(0), single).unwrap();
        let c = b.compose(&a).unwrap();
        assert_eq!(c.coefficient(&SetPartition::empty()), PolyT::t_pow(1));
        assert_eq!(c.terms().len(), 1);
    }

    #[test]
    fn unit_laws_on_basis() {
        for x in 0..=3 {
            for y in 0..=3 {
                for p in enumerate_set_partitions(x + y).unwrap() {
                    let a = Morphism::basis(obj(x), obj(y), p).unwrap();
                    assert_eq!(Morphism::identity(obj(y)).compose(&a).unwrap(), a);
                    assert_eq!(a.compose(&Morphism::identity(obj(x))).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn object_mismatch() {
        let a = Morphism::identity(obj(2));
        let b = Morphism::identity(obj(3));
        assert!(b.compose(&a).is_err());
        assert!(a.add(&b).is_err());
        assert!(Morphism::basis(obj(1), obj(1), SetPartition::discrete(3)).is_err());
    }

    #[test]
    fn transpose_basics() {
        for n in 0..=4 {
            let id = Morphism::identity(obj(n));
            assert_eq!(id.transpose(), id);
        }
        // f : {0,1,2} -> {0,1}, f = (0, 0, 1); from_map gives [2] -> [3].
        let m = Morphism::from_map(&[0, 0, 1], 2).unwrap();
        let t = m.transpose();
        assert_eq!((t.source(), t.target()), (obj(3), obj(2)));
        // Same underlying relation: x_i ~ y_{f(i)} read with X first.
        let expect = SetPartition::from_labels(&[0, 0, 1, 0, 1]);
        assert_eq!(t.terms().keys().next().unwrap(), &expect);
        assert_eq!(t.transpose(), m);
    }

    #[test]
    fn snake_small() {
        for n in 0..=4 {
            let x = obj(n);
            let id = Morphism::identity(x);
            let left = Morphism::ev(x).tensor(&id);
            let right = id.tensor(&Morphism::coev(x));
            assert_eq!(left.compose(&right).unwrap(), id, "n = {n}");
        }
    }

    #[test]
    fn json_round_trip() {
        let p = SetPartition::from_rgs(vec![0, 1, 0]).unwrap();
        let c = PolyT::new(vec![t_at(2), BigRational::new(1.into(), 3.into())]);
        let m = Morphism::from_terms(obj(1), obj(2), [(p, c)]).unwrap();
        let s = m.to_json();
        assert!(s.contains("\"source_size\":1"));
        assert!(s.contains("\"coeffs\":[\"2\",\"1/3\"]"));
        assert_eq!(Morphism::from_json(&s).unwrap(), m);
        assert!(Morphism::from_json(r#"{"source_size":1,"target_size":1,"terms":[{"rgs":[0],"coeffs":["1"]}]}"#).is_err());
        assert!(Morphism::from_json(r#"{"source_size":1,"target_size":1,"terms":[{"rgs":[1,0],"coeffs":["1"]}]}"#).is_err());
    }

    #[test]
    fn like_terms_cancel() {
        let p = SetPartition::discrete(2);
        let m = Morphism::from_terms(
            obj(1),
            obj(1),
            [(p.clone(), PolyT::from_int(2)), (p, PolyT::from_int(-2))],
        )
        .unwrap();
        assert!(m.is_zero());
    }
}
