//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] lives in a fixed ambient ring `Q[t1, ..., tn]` and stores
//! only its nonzero terms. Terms are kept sorted by the monomial order
//! described on [`Monomial`], so structural equality is mathematical
//! equality and printing is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient mismatch: {left} variables vs {right} variables")]
    AmbientMismatch { left: usize, right: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("variable index {index} out of range for {ambient} variables")]
    VariableOutOfRange { index: usize, ambient: usize },
}

fn check_ambient(left: usize, right: usize) -> Result<(), PolyError> {
    if left == right {
        Ok(())
    } else {
        Err(PolyError::AmbientMismatch { left, right })
    }
}

/// Exponent vector `(i1, ..., in)` standing for `t1^i1 * ... * tn^in`.
///
/// Monomials are ordered lexicographically with the *last* variable most
/// significant (`tn > ... > t1`). Under this order the leading term of
/// `t_{m+j} - c*t1^a1...tm^am` is always `t_{m+j}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, index: usize) -> Result<Self, PolyError> {
        if index >= n {
            return Err(PolyError::VariableOutOfRange { index, ambient: n });
        }
        let mut exps = vec![0; n];
        exps[index] = 1;
        Ok(Monomial(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> Result<u32, PolyError> {
        self.0
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .ok_or(PolyError::ExponentOverflow)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        check_ambient(self.len(), other.len())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }

    pub fn try_pow(&self, e: u32) -> Result<Monomial, PolyError> {
        self.0
            .iter()
            .map(|&a| a.checked_mul(e).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }

    /// Zero-pads (or truncates) to `n` variables.
    pub fn resized(&self, n: usize) -> Monomial {
        let mut exps = self.0.clone();
        exps.resize(n, 0);
        Monomial(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .iter()
            .rev()
            .cmp(other.0.iter().rev())
            .then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ambient: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ambient: usize) -> Self {
        Polynomial {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: usize) -> Self {
        Polynomial::constant(Rational::one(), ambient)
    }

    pub fn constant(c: Rational, ambient: usize) -> Self {
        Polynomial::term(c, Monomial::one(ambient))
    }

    /// The single term `c * t^mono`; zero if `c` is zero.
    pub fn term(c: Rational, mono: Monomial) -> Self {
        let mut p = Polynomial::zero(mono.len());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn var(ambient: usize, index: usize) -> Result<Self, PolyError> {
        Ok(Polynomial::term(
            Rational::one(),
            Monomial::var(ambient, index)?,
        ))
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(ambient: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(ambient);
        for (mono, c) in terms {
            check_ambient(ambient, mono.len())?;
            p.add_term(mono, &c);
        }
        Ok(p)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading (largest) monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, mono: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_ambient(self.ambient, other.ambient)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_ambient(self.ambient, other.ambient)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), &c.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient);
        }
        Polynomial {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    /// Multiplies every term by the monomial `t^mono`.
    pub fn shift(&self, mono: &Monomial) -> Result<Polynomial, PolyError> {
        check_ambient(self.ambient, mono.len())?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.try_mul(mono)?, c.clone())))
            .collect::<Result<BTreeMap<_, _>, PolyError>>()?;
        Ok(Polynomial {
            ambient: self.ambient,
            terms,
        })
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_ambient(self.ambient, other.ambient)?;
        let mut out = Polynomial::zero(self.ambient);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.try_mul(mb)?, &ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn try_pow(&self, mut e: u32) -> Result<Polynomial, PolyError> {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.ambient);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        check_ambient(self.ambient, point.len())?;
        let mut sum = Rational::zero();
        for (mono, c) in &self.terms {
            let value = mono
                .exponents()
                .iter()
                .zip(point)
                .fold(c.clone(), |acc, (&e, x)| acc.mul(&x.pow(e)));
            sum = sum.add(&value);
        }
        Ok(sum)
    }

    /// Replaces `t_{l+1}` by `images[l]` and expands.
    ///
    /// The result lives in the common ambient ring of the images. With no
    /// images (a polynomial in zero variables) the constant is returned as is.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        check_ambient(self.ambient, images.len())?;
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.ambient;
        for img in images {
            check_ambient(target, img.ambient)?;
        }
        // powers[l][e] = images[l]^e, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; images.len()];
        let mut out = Polynomial::zero(target);
        for (mono, c) in &self.terms {
            let mut product = Polynomial::constant(c.clone(), target);
            for (l, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[l];
                if (e as usize) < 64 {
                    while cache.len() <= e as usize {
                        let next = cache.last().expect("nonempty").try_mul(&images[l])?;
                        cache.push(next);
                    }
                    product = product.try_mul(&cache[e as usize])?;
                } else {
                    product = product.try_mul(&images[l].try_pow(e)?)?;
                }
                if product.is_zero() {
                    break;
                }
            }
            out = out.try_add(&product)?;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `n` variables by zero-padding exponents.
    ///
    /// Shrinking is only allowed when the dropped variables do not occur.
    pub fn embed(&self, n: usize) -> Result<Polynomial, PolyError> {
        if n < self.ambient {
            let occurs = self
                .terms
                .keys()
                .any(|m| m.exponents()[n..].iter().any(|&e| e != 0));
            if occurs {
                return Err(PolyError::AmbientMismatch {
                    left: self.ambient,
                    right: n,
                });
            }
        }
        Ok(Polynomial {
            ambient: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.resized(n), c.clone()))
                .collect(),
        })
    }
}

/// `Δ_i(t_u, v) = Σ_{j=0}^{i-1} t_u^{i-1-j} v^j`, fully expanded.
///
/// `(t_u - v) * Δ_i(t_u, v) = t_u^i - v^i`; `Δ_0 = 0`.
pub fn delta_expand(i: u32, u_index: usize, v: &Polynomial) -> Result<Polynomial, PolyError> {
    let n = v.ambient();
    let u = Monomial::var(n, u_index)?;
    let mut out = Polynomial::zero(n);
    if i == 0 {
        return Ok(out);
    }
    let mut v_power = Polynomial::one(n);
    for j in 0..i {
        let u_power = u.try_pow(i - 1 - j)?;
        out = out.try_add(&v_power.shift(&u_power)?)?;
        if j + 1 < i {
            v_power = v_power.try_mul(v)?;
        }
    }
    Ok(out)
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::print_poly_default(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::print_poly_default(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn poly(n: usize, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(n, terms.iter().map(|(c, e)| (mono(e), q(*c)))).unwrap()
    }

    fn curve_generator() -> Polynomial {
        poly(2, &[(1, &[0, 1]), (-4, &[3, 0])])
    }

    #[test]
    fn add_builds_curve_generator() {
        let t2 = poly(2, &[(1, &[0, 1])]);
        let m = poly(2, &[(-4, &[3, 0])]);
        assert_eq!(t2.try_add(&m).unwrap(), curve_generator());
        let f = curve_generator();
        assert_eq!(f.try_add(&Polynomial::zero(2)).unwrap(), f);
        let z = f.try_add(&f.neg()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn add_rejects_ambient_mismatch() {
        let err = Polynomial::one(2).try_add(&Polynomial::one(3)).unwrap_err();
        assert_eq!(err, PolyError::AmbientMismatch { left: 2, right: 3 });
        assert!(Polynomial::one(2).try_mul(&Polynomial::one(1)).is_err());
    }

    #[test]
    fn mul_difference_of_squares() {
        let f = curve_generator();
        let g = poly(2, &[(1, &[0, 1]), (4, &[3, 0])]);
        let expected = poly(2, &[(1, &[0, 2]), (-16, &[6, 0])]);
        let product = f.try_mul(&g).unwrap();
        assert_eq!(product, expected);
        // five fixed points as an evaluation cross-check
        for (a, b) in [(1, 2), (-3, 5), (0, 7), (2, -1), (4, 4)] {
            let x = [q(a), q(b)];
            let lhs = f.eval(&x).unwrap().mul(&g.eval(&x).unwrap());
            assert_eq!(lhs, expected.eval(&x).unwrap());
        }
        assert_eq!(f.try_mul(&Polynomial::one(2)).unwrap(), f);
        assert!(f.try_mul(&Polynomial::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn mul_reports_exponent_overflow() {
        let big = Polynomial::term(q(1), mono(&[u32::MAX, 0]));
        let t1 = poly(2, &[(1, &[1, 0])]);
        assert_eq!(big.try_mul(&t1), Err(PolyError::ExponentOverflow));
        assert_eq!(
            mono(&[u32::MAX, 1]).total_degree(),
            Err(PolyError::ExponentOverflow)
        );
    }

    #[test]
    fn eval_examples() {
        let f = curve_generator();
        assert_eq!(f.eval(&[q(1), q(4)]).unwrap(), q(0));
        assert_eq!(f.eval(&[q(1), q(5)]).unwrap(), q(1));
        assert_eq!(Polynomial::zero(2).eval(&[q(3), q(9)]).unwrap(), q(0));
        assert!(f.eval(&[q(1)]).is_err());
    }

    #[test]
    fn substitute_examples() {
        let images = [poly(1, &[(1, &[1])]), poly(1, &[(4, &[3])])];
        let t1 = poly(2, &[(1, &[1, 0])]);
        let t2 = poly(2, &[(1, &[0, 1])]);
        assert_eq!(t2.substitute(&images).unwrap(), poly(1, &[(4, &[3])]));
        assert_eq!(t1.substitute(&images).unwrap(), poly(1, &[(1, &[1])]));
        assert!(curve_generator().substitute(&images).unwrap().is_zero());
        let mismatched = [poly(1, &[(1, &[1])]), poly(2, &[(1, &[1, 0])])];
        assert!(t1.substitute(&mismatched).is_err());
        assert!(t1.substitute(&images[..1]).is_err());
    }

    #[test]
    fn delta_examples() {
        let v = poly(3, &[(2, &[1, 0, 1])]);
        assert!(delta_expand(0, 1, &v).unwrap().is_zero());
        assert_eq!(delta_expand(1, 1, &v).unwrap(), Polynomial::one(3));
        let t1 = poly(2, &[(1, &[1, 0])]);
        let expected = poly(2, &[(1, &[0, 2]), (1, &[1, 1]), (1, &[2, 0])]);
        assert_eq!(delta_expand(3, 1, &t1).unwrap(), expected);
        assert!(matches!(
            delta_expand(2, 5, &t1),
            Err(PolyError::VariableOutOfRange {
                index: 5,
                ambient: 2
            })
        ));
    }

    #[test]
    fn order_puts_last_variable_first() {
        let f = poly(2, &[(1, &[0, 2]), (1, &[1, 1]), (1, &[2, 0])]);
        let order: Vec<_> = f.terms().map(|(m, _)| m.exponents().to_vec()).collect();
        assert_eq!(order, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let (lead, _) = curve_generator()
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        assert_eq!(lead, mono(&[0, 1]));
    }

    #[test]
    fn embed_pads_and_guards_shrinking() {
        let f = poly(1, &[(3, &[2])]);
        assert_eq!(f.embed(3).unwrap(), poly(3, &[(3, &[2, 0, 0])]));
        assert_eq!(f.embed(3).unwrap().embed(1).unwrap(), f);
        assert!(curve_generator().embed(1).is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = Polynomial> {
        arb_poly_bounded(n, 6, 8)
    }

    fn arb_poly_bounded(
        n: usize,
        max_exp: u32,
        max_terms: usize,
    ) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(
            (prop::collection::vec(0..=max_exp, n), arb_rational()),
            0..=max_terms,
        )
        .prop_map(move |terms| {
            Polynomial::from_terms(n, terms.into_iter().map(|(e, c)| (Monomial::new(e), c)))
                .unwrap()
        })
    }

    fn arb_point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec(arb_rational(), n)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn ring_laws(f in arb_poly(3), g in arb_poly(3), h in arb_poly(3)) {
            prop_assert_eq!(f.try_add(&g)?.try_add(&h)?, f.try_add(&g.try_add(&h)?)?);
            prop_assert_eq!(f.try_mul(&g)?.try_mul(&h)?, f.try_mul(&g.try_mul(&h)?)?);
            prop_assert_eq!(f.try_add(&g)?, g.try_add(&f)?);
            prop_assert_eq!(f.try_mul(&g)?, g.try_mul(&f)?);
            prop_assert_eq!(
                f.try_mul(&g.try_add(&h)?)?,
                f.try_mul(&g)?.try_add(&f.try_mul(&h)?)?
            );
        }

        #[test]
        fn no_zero_coefficients_stored(f in arb_poly(3), g in arb_poly(3)) {
            for p in [f.try_add(&g)?, f.try_sub(&f)?, f.try_mul(&g)?] {
                prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
            }
        }

        #[test]
        fn eval_is_a_homomorphism(f in arb_poly(3), g in arb_poly(3), x in arb_point(3)) {
            let fx = f.eval(&x)?;
            let gx = g.eval(&x)?;
            prop_assert_eq!(f.try_mul(&g)?.eval(&x)?, fx.mul(&gx));
            prop_assert_eq!(f.try_add(&g)?.eval(&x)?, fx.add(&gx));
        }

        #[test]
        fn substitute_commutes_with_eval(
            f in arb_poly_bounded(3, 3, 6),
            images in prop::collection::vec(arb_poly_bounded(2, 2, 3), 3),
            x in arb_point(2),
        ) {
            let lhs = f.substitute(&images)?.eval(&x)?;
            let inner = images.iter().map(|p| p.eval(&x)).collect::<Result<Vec<_>, _>>()?;
            prop_assert_eq!(lhs, f.eval(&inner)?);
        }

        #[test]
        fn try_pow_matches_repeated_mul(f in arb_poly(2), e in 0u32..5) {
            let mut expected = Polynomial::one(2);
            for _ in 0..e {
                expected = expected.try_mul(&f)?;
            }
            prop_assert_eq!(f.try_pow(e)?, expected);
        }
    }
}
