//! Real scalars for the numeric solvers: `f64` and a multiprecision float.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode};
use num_rational::BigRational;

use crate::scalar::rational_to_f64;

/// Ordered field with the transcendental functions the solvers need.
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    fn pi() -> Self;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn asin(&self) -> Self;
    fn acos(&self) -> Self;

    /// Bits of working precision.
    fn precision_bits() -> usize;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn asin(&self) -> Self {
        f64::asin(self.clamp(-1.0, 1.0))
    }
    fn acos(&self) -> Self {
        f64::acos(self.clamp(-1.0, 1.0))
    }
    fn precision_bits() -> usize {
        53
    }
}

pub const DEFAULT_PRECISION: usize = 256;

thread_local! {
    static PRECISION: Cell<usize> = const { Cell::new(DEFAULT_PRECISION) };
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

const RM: RoundingMode = RoundingMode::ToEven;

/// Runs `f` with the multiprecision working precision set to `bits` on this thread.
pub fn with_precision<R>(bits: usize, f: impl FnOnce() -> R) -> R {
    let old = PRECISION.with(|p| p.replace(bits.max(64)));
    let out = f();
    PRECISION.with(|p| p.set(old));
    out
}

fn prec() -> usize {
    PRECISION.with(|p| p.get())
}

/// Multiprecision real; precision comes from [`with_precision`].
#[derive(Clone, Debug)]
pub struct HighPrec(pub BigFloat);

impl HighPrec {
    fn wrap(x: BigFloat) -> Self {
        debug_assert!(!x.is_nan(), "multiprecision NaN");
        HighPrec(x)
    }
}

impl PartialEq for HighPrec {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for HighPrec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Display for HighPrec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident) => {
        impl $tr for HighPrec {
            type Output = HighPrec;
            fn $m(self, rhs: HighPrec) -> HighPrec {
                HighPrec::wrap(self.0.$m(&rhs.0, prec(), RM))
            }
        }
    };
}

bin_op!(Add, add);
bin_op!(Sub, sub);
bin_op!(Mul, mul);
bin_op!(Div, div);

impl Neg for HighPrec {
    type Output = HighPrec;
    fn neg(self) -> HighPrec {
        HighPrec(self.0.neg())
    }
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn from_int(n: &num_bigint::BigInt) -> BigFloat {
    with_consts(|cc| BigFloat::parse(&n.to_string(), astro_float::Radix::Dec, prec(), RM, cc))
}

impl Real for HighPrec {
    fn from_f64(x: f64) -> Self {
        HighPrec(BigFloat::from_f64(x, prec()))
    }
    fn from_rational(q: &BigRational) -> Self {
        HighPrec::wrap(from_int(q.numer()).div(&from_int(q.denom()), prec(), RM))
    }
    fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        let text = with_consts(|cc| self.0.format(astro_float::Radix::Dec, RM, cc)).unwrap_or_default();
        text.parse().unwrap_or(f64::NAN)
    }
    fn pi() -> Self {
        HighPrec(with_consts(|cc| cc.pi(prec(), RM)))
    }
    fn sqrt(&self) -> Self {
        HighPrec::wrap(self.0.sqrt(prec(), RM))
    }
    fn sin(&self) -> Self {
        HighPrec::wrap(with_consts(|cc| self.0.sin(prec(), RM, cc)))
    }
    fn asin(&self) -> Self {
        let one = BigFloat::from_f64(1.0, prec());
        let x = self.0.clamp(&BigFloat::neg(&one), &one);
        HighPrec::wrap(with_consts(|cc| x.asin(prec(), RM, cc)))
    }
    fn acos(&self) -> Self {
        let one = BigFloat::from_f64(1.0, prec());
        let x = self.0.clamp(&BigFloat::neg(&one), &one);
        HighPrec::wrap(with_consts(|cc| x.acos(prec(), RM, cc)))
    }
    fn precision_bits() -> usize {
        prec()
    }
}
