//! The Hecke algebra of `S_n` over `Z[v, v^-1]` in the normalization
//! `H_s^2 = H_e + (v^-1 - v) H_s`, `H̲_s = H_s + v H_e`.

pub mod cache;
mod kl;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::symgroup::Permutation;

pub use kl::KlTable;

/// A finitely supported combination of standard basis elements `H_w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeckeElt {
    n: usize,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero(n: usize) -> Self {
        HeckeElt {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::standard(&Permutation::identity(n))
    }

    /// `H_w`.
    pub fn standard(w: &Permutation) -> Self {
        let mut h = Self::zero(w.n());
        h.terms.insert(w.clone(), LaurentPoly::one());
        h
    }

    /// `H̲_{s_i} = H_{s_i} + v H_e`.
    pub fn kl_generator(n: usize, i: usize) -> Self {
        let mut h = Self::standard(&Permutation::simple(n, i));
        h.add_term(&Permutation::identity(n), &LaurentPoly::v());
        h
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Permutation, LaurentPoly)>,
    ) -> Result<Self> {
        let mut h = Self::zero(n);
        for (w, c) in terms {
            if w.n() != n {
                return Err(Error::size(format!(
                    "S_{} term in an element of H(S_{n})",
                    w.n()
                )));
            }
            h.add_term(&w, &c);
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// `self += c H_w`.
    pub fn add_term(&mut self, w: &Permutation, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(w);
        }
    }

    fn check(&self, other: &HeckeElt) -> Result<()> {
        if self.n != other.n {
            return Err(Error::size(format!("H(S_{}) vs H(S_{})", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        let mut out = Self::zero(self.n);
        for (w, a) in &self.terms {
            out.add_term(w, &(a * c));
        }
        out
    }

    /// `self * H_{s_i}`.
    pub fn mul_standard_generator_right(&self, i: usize) -> HeckeElt {
        let q = LaurentPoly::v_inv_minus_v();
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let ws = w.mul_simple_right(i);
            out.add_term(&ws, c);
            if w.has_right_descent(i) {
                out.add_term(w, &(c * &q));
            }
        }
        out
    }

    /// `H_{s_i} * self`.
    pub fn mul_standard_generator_left(&self, i: usize) -> HeckeElt {
        let q = LaurentPoly::v_inv_minus_v();
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            out.add_term(&w.mul_simple_left(i), c);
            if w.has_left_descent(i) {
                out.add_term(w, &(c * &q));
            }
        }
        out
    }

    /// `self * H̲_{s_i}`.
    pub fn mul_kl_generator_right(&self, i: usize) -> HeckeElt {
        let mut out = self.mul_standard_generator_right(i);
        for (w, c) in &self.terms {
            out.add_term(w, &c.shift(1));
        }
        out
    }

    /// Product in the Hecke algebra.
    pub fn mul(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (y, c) in &other.terms {
            let mut prod = self.clone();
            for i in y.reduced_word() {
                prod = prod.mul_standard_generator_right(i);
            }
            for (w, a) in &prod.terms {
                out.add_term(w, &(a * c));
            }
        }
        Ok(out)
    }

    /// The ring involution `v -> v^-1`, `H_w -> (H_{w^-1})^-1`.
    pub fn bar(&self) -> HeckeElt {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let image = bar_standard(w);
            let cb = c.bar();
            for (y, a) in &image.terms {
                out.add_term(y, &(a * &cb));
            }
        }
        out
    }

    /// The linear anti-involution `H_w -> H_{w^-1}`.
    pub fn sigma(&self) -> HeckeElt {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            out.add_term(&w.inverse(), c);
        }
        out
    }

    /// Specialization `v = 1`, as integer coefficients on group elements.
    pub fn eval_one(&self) -> BTreeMap<Permutation, i64> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.eval_one_i64()))
            .filter(|(_, c)| *c != 0)
            .collect()
    }
}

/// `bar(H_w)` expanded in the standard basis, using
/// `bar(H_s) = H_s + (v - v^-1) H_e` along a reduced word.
fn bar_standard(w: &Permutation) -> HeckeElt {
    let n = w.n();
    let c = -LaurentPoly::v_inv_minus_v();
    let mut x = HeckeElt::one(n);
    for i in w.reduced_word() {
        let mut next = x.mul_standard_generator_right(i);
        for (y, a) in &x.terms {
            next.add_term(y, &(a * &c));
        }
        x = next;
    }
    x
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})H[{w}]")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    w: &'a Permutation,
    c: &'a LaurentPoly,
}

impl Serialize for HeckeElt {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson<'_>> = self.terms.iter().map(|(w, c)| TermJson { w, c }).collect();
        terms.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::symgroup::SymGroup;

    fn lp(min: i32, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min, c)
    }

    fn s(n: usize, i: usize) -> HeckeElt {
        HeckeElt::standard(&Permutation::simple(n, i))
    }

    #[test]
    fn quadratic_relation() {
        let hs = s(3, 1);
        let sq = hs.mul(&hs).unwrap();
        let expected = HeckeElt::one(3)
            .add(&hs.scale(&LaurentPoly::v_inv_minus_v()))
            .unwrap();
        assert_eq!(sq, expected);
        let a = HeckeElt::kl_generator(3, 2).add(&s(3, 1)).unwrap();
        assert_eq!(HeckeElt::one(3).mul(&a).unwrap(), a);
        assert_eq!(a.mul(&HeckeElt::one(3)).unwrap(), a);
    }

    #[test]
    fn kl_generator_squares() {
        for i in 1..4 {
            let c = HeckeElt::kl_generator(4, i);
            assert_eq!(c.mul(&c).unwrap(), c.scale(&LaurentPoly::v_plus_v_inv()));
            assert_eq!(
                c.mul_kl_generator_right(i),
                c.scale(&LaurentPoly::v_plus_v_inv())
            );
        }
    }

    #[test]
    fn braid_relations_kl_form() {
        for n in 2..=5 {
            for i in 1..n {
                for j in 1..n {
                    let (a, b) = (HeckeElt::kl_generator(n, i), HeckeElt::kl_generator(n, j));
                    if i.abs_diff(j) == 1 {
                        let lhs = a.mul(&b).unwrap().mul(&a).unwrap().add(&b).unwrap();
                        let rhs = b.mul(&a).unwrap().mul(&b).unwrap().add(&a).unwrap();
                        assert_eq!(lhs, rhs);
                    } else {
                        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn bar_examples() {
        assert_eq!(HeckeElt::one(3).bar(), HeckeElt::one(3));
        let hs = s(3, 1);
        let expected = hs
            .add(&HeckeElt::one(3).scale(&lp(-1, &[-1, 0, 1])))
            .unwrap();
        assert_eq!(hs.bar(), expected);
        assert_eq!(
            HeckeElt::kl_generator(3, 1).bar(),
            HeckeElt::kl_generator(3, 1)
        );
        // bar(H_s) is the inverse of H_s
        assert_eq!(hs.bar().mul(&hs).unwrap(), HeckeElt::one(3));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(s(3, 1).sigma(), s(3, 1));
        let st = HeckeElt::standard(&Permutation::from_word(3, &[1, 2]).unwrap());
        let ts = HeckeElt::standard(&Permutation::from_word(3, &[2, 1]).unwrap());
        assert_eq!(st.sigma(), ts);
    }

    #[test]
    fn standard_products_follow_lengths() {
        let g = SymGroup::new(4);
        for x in g.elements() {
            for i in 1..4 {
                let xs = x.mul_simple_right(i);
                if xs.length() > x.length() {
                    let prod = HeckeElt::standard(x).mul(&s(4, i)).unwrap();
                    assert_eq!(prod, HeckeElt::standard(&xs));
                }
            }
        }
    }

    fn arb_elt(n: usize) -> impl Strategy<Value = HeckeElt> {
        let g = SymGroup::new(n);
        let elems = g.elements().to_vec();
        prop::collection::vec(
            (
                0..elems.len(),
                -2i32..2,
                prop::collection::vec(-2i64..3, 0..3),
            ),
            0..4,
        )
        .prop_map(move |terms| {
            HeckeElt::from_terms(
                n,
                terms
                    .into_iter()
                    .map(|(k, m, c)| (elems[k].clone(), LaurentPoly::from_i64s(m, &c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn sigma_is_anti_multiplicative(a in arb_elt(4), b in arb_elt(4)) {
            prop_assert_eq!(a.mul(&b).unwrap().sigma(), b.sigma().mul(&a.sigma()).unwrap());
        }

        #[test]
        fn bar_is_multiplicative_involution(a in arb_elt(4), b in arb_elt(4)) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!(a.mul(&b).unwrap().bar(), a.bar().mul(&b.bar()).unwrap());
        }

        #[test]
        fn bar_commutes_with_sigma(a in arb_elt(4)) {
            prop_assert_eq!(a.bar().sigma(), a.sigma().bar());
        }

        #[test]
        fn associativity(a in arb_elt(3), b in arb_elt(3), c in arb_elt(3)) {
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
        }
    }
}
