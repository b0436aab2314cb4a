//! Right actions of an algebra on a finite-dimensional space. The product
//! formulas for polynomials, series and Laurent series only ever multiply a
//! left factor by algebra elements on the right, so the same code serves the
//! ring itself and every right module.

use std::fmt::Debug;

use crate::algebra::{Algebra, AlgebraElement};
use crate::field::GaloisField;

pub trait RightActionDomain: Sync + Send {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn field(&self) -> &GaloisField;

    fn zero(&self) -> Self::Elem;

    fn is_zero(&self, x: &Self::Elem) -> bool;

    fn add_assign(&self, acc: &mut Self::Elem, x: &Self::Elem);

    /// `x · a`
    fn act(&self, x: &Self::Elem, a: &AlgebraElement) -> Self::Elem;

    /// `acc += x · a`
    fn act_acc(&self, acc: &mut Self::Elem, x: &Self::Elem, a: &AlgebraElement) {
        let p = self.act(x, a);
        self.add_assign(acc, &p);
    }
}

impl RightActionDomain for Algebra {
    type Elem = AlgebraElement;

    fn field(&self) -> &GaloisField {
        Algebra::field(self)
    }

    fn zero(&self) -> AlgebraElement {
        Algebra::zero(self)
    }

    fn is_zero(&self, x: &AlgebraElement) -> bool {
        x.is_zero()
    }

    fn add_assign(&self, acc: &mut AlgebraElement, x: &AlgebraElement) {
        Algebra::add_assign(self, acc, x)
    }

    fn act(&self, x: &AlgebraElement, a: &AlgebraElement) -> AlgebraElement {
        self.mul(x, a)
    }

    fn act_acc(&self, acc: &mut AlgebraElement, x: &AlgebraElement, a: &AlgebraElement) {
        self.mul_acc(acc, x, a)
    }
}
