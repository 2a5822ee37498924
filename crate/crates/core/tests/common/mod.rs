//! Fixed-point reference values at 320 fractional bits.
//!
//! Every value is an integer `v` with the true quantity in
//! `[(v − e)/2^P, (v + e)/2^P]`; `e` is tracked loosely but soundly.

#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use sausage_core::formulas::{Basis, LinearForm};
use sausage_core::Interval;

pub const P: u32 = 320;

#[derive(Clone, Debug)]
pub struct Fixed {
    pub v: BigInt,
    /// Error bound in units of `2^-P`.
    pub e: BigInt,
}

fn one() -> BigInt {
    BigInt::one() << P
}

impl Fixed {
    pub fn int(n: i64) -> Fixed {
        Fixed {
            v: BigInt::from(n) << P,
            e: BigInt::zero(),
        }
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        Fixed {
            v: &self.v + &o.v,
            e: &self.e + &o.e,
        }
    }

    pub fn sub(&self, o: &Fixed) -> Fixed {
        Fixed {
            v: &self.v - &o.v,
            e: &self.e + &o.e,
        }
    }

    pub fn scale(&self, k: i64) -> Fixed {
        Fixed {
            v: &self.v * k,
            e: &self.e * k.abs(),
        }
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        // |ab − a'b'| ≤ |a|e_b + |b|e_a + e_a e_b, plus one for truncation
        let v = (&self.v * &o.v) >> P;
        let e = ((self.v.abs() * &o.e + o.v.abs() * &self.e + &self.e * &o.e) >> P) + 2;
        Fixed { v, e }
    }

    /// Multiplication by an exact rational.
    pub fn mul_ratio(&self, q: &BigRational) -> Fixed {
        let v = (&self.v * q.numer()) / q.denom();
        let e = (&self.e * q.numer().abs()) / q.denom() + 2;
        Fixed { v, e }
    }

    pub fn lo(&self) -> BigRational {
        Ratio::new(&self.v - &self.e, one())
    }

    pub fn hi(&self) -> BigRational {
        Ratio::new(&self.v + &self.e, one())
    }

    /// Width of the reference itself in units of `2^-P`.
    pub fn err_bits(&self) -> u64 {
        self.e.bits()
    }
}

pub fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Whether the interval provably contains every value the reference allows.
pub fn encloses(i: Interval, r: &Fixed) -> bool {
    exact(i.lo()) <= r.lo() && r.hi() <= exact(i.hi())
}

/// Whether `[lo, hi]` spans at most `k` doubles.
pub fn within_ulps(i: Interval, k: u32) -> bool {
    let mut x = i.lo();
    for _ in 0..k {
        x = x.next_up();
    }
    i.hi() <= x
}

/// `atan(p/q)` for `|p/q| < 1` by the alternating series.
pub fn atan_ratio(p: i64, q: i64) -> Fixed {
    let x = Ratio::new(BigInt::from(p), BigInt::from(q));
    let x2 = &x * &x;
    let mut term = x.clone();
    let mut sum = BigRational::zero();
    let tiny = Ratio::new(BigInt::one(), one() << 8);
    let mut k = 0i64;
    loop {
        let t = &term / BigInt::from(2 * k + 1);
        if t.abs() < tiny {
            break;
        }
        if k % 2 == 0 {
            sum += &t;
        } else {
            sum -= &t;
        }
        term *= &x2;
        k += 1;
    }
    from_rational(&sum, 4)
}

/// `atan(x)` for a fixed-point `x` with `|x| < 1/2`.
pub fn atan_fixed(x: &Fixed) -> Fixed {
    let x2 = x.mul(x);
    let mut term = x.clone();
    let mut sum = Fixed::int(0);
    let mut k = 0i64;
    // terms decrease, so stopping below 16 units bounds the tail by 16
    while term.v.bits() > 4 {
        let t = Fixed {
            v: &term.v / (2 * k + 1),
            e: &term.e / (2 * k + 1) + 1,
        };
        sum = if k % 2 == 0 { sum.add(&t) } else { sum.sub(&t) };
        term = term.mul(&x2);
        k += 1;
    }
    sum.e += 16 + &term.e;
    sum
}

pub fn from_rational(q: &BigRational, e: i64) -> Fixed {
    Fixed {
        v: (q.numer() << P) / q.denom(),
        e: BigInt::from(e + 1),
    }
}

pub fn sqrt_int(n: u64) -> Fixed {
    let s = (BigInt::from(n) << (2 * P)).sqrt();
    Fixed {
        v: s,
        e: BigInt::one(),
    }
}

pub fn pi() -> Fixed {
    static PI: OnceLock<Fixed> = OnceLock::new();
    PI.get_or_init(|| atan_ratio(1, 5).scale(16).sub(&atan_ratio(1, 239).scale(4)))
        .clone()
}

/// `acos(1/3) = π/2 − atan(√2/4)`.
pub fn acos_one_third() -> Fixed {
    let x = sqrt_int(2).mul_ratio(&Ratio::new(BigInt::one(), BigInt::from(4)));
    let half_pi = pi().mul_ratio(&Ratio::new(BigInt::one(), BigInt::from(2)));
    half_pi.sub(&atan_fixed(&x))
}

/// `atan(3 − 2√2)`.
pub fn atan_silver() -> Fixed {
    atan_fixed(&Fixed::int(3).sub(&sqrt_int(2).scale(2)))
}

pub fn pi_sq() -> Fixed {
    let p = pi();
    p.mul(&p)
}

pub fn kappa3() -> Fixed {
    pi().mul_ratio(&Ratio::new(BigInt::from(4), BigInt::from(3)))
}

pub fn kappa4() -> Fixed {
    pi_sq().mul_ratio(&Ratio::new(BigInt::one(), BigInt::from(2)))
}

pub fn basis(b: Basis) -> Fixed {
    match b {
        Basis::One => Fixed::int(1),
        Basis::Sqrt2 => sqrt_int(2),
        Basis::Pi => pi(),
        Basis::Sqrt3Pi => sqrt_int(3).mul(&pi()),
        Basis::EdgeExcess => acos_one_third().scale(3).sub(&pi()),
        Basis::AtanSilver => atan_silver(),
        Basis::PiSq => pi_sq(),
    }
}

/// High-precision value of an exact linear form over the basis.
pub fn eval_form(f: &LinearForm) -> Fixed {
    let mut acc = Fixed::int(0);
    for b in Basis::ALL {
        let c = f.coeff(b);
        if c.is_zero() {
            continue;
        }
        let q = Ratio::new(BigInt::from(*c.numer()), BigInt::from(*c.denom()));
        acc = acc.add(&basis(b).mul_ratio(&q));
    }
    acc
}

/// Deterministic RNG for the property suites.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Exact `m · 2^e`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    pub fn from_f64(x: f64) -> Dyadic {
        assert!(x.is_finite(), "finite input");
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        Dyadic {
            m: BigInt::from(m) * sign,
            e,
        }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        let e = self.e.min(o.e);
        Dyadic {
            m: (&self.m << (self.e - e) as usize) + (&o.m << (o.e - e) as usize),
            e,
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            m: -&self.m,
            e: self.e,
        }
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic {
            m: &self.m * &o.m,
            e: self.e + o.e,
        }
    }

    pub fn cmp(&self, o: &Dyadic) -> std::cmp::Ordering {
        let e = self.e.min(o.e);
        (&self.m << (self.e - e) as usize).cmp(&(&o.m << (o.e - e) as usize))
    }

    pub fn le(&self, o: &Dyadic) -> bool {
        self.cmp(o) != std::cmp::Ordering::Greater
    }
}

/// Random finite double with a binary exponent in `[-max_exp - 60, max_exp]`,
/// so products reach the subnormal range without overflowing.
pub fn random_f64<R: rand::Rng>(r: &mut R, max_exp: i32) -> f64 {
    let mant = 1.0 + r.gen::<f64>();
    let e = r.gen_range(-max_exp - 60..=max_exp);
    let sign = if r.gen::<bool>() { 1.0 } else { -1.0 };
    match r.gen_range(0..20) {
        0 => 0.0,
        1 => sign * r.gen_range(1..1000) as f64,
        _ => sign * mant * 2f64.powi(e),
    }
}

fn random_interval<R: rand::Rng>(r: &mut R, max_exp: i32) -> Interval {
    let a = random_f64(r, max_exp);
    if r.gen_range(0..3) == 0 {
        return Interval::point(a);
    }
    let b = if r.gen::<bool>() {
        a + r.gen::<f64>() * a.abs() * 1e-3
    } else {
        random_f64(r, max_exp)
    };
    Interval::new(a.min(b), a.max(b)).expect("ordered")
}

fn ends(x: Interval) -> [Dyadic; 2] {
    [Dyadic::from_f64(x.lo()), Dyadic::from_f64(x.hi())]
}

/// Checks that `lo ≤ v ≤ hi` for each candidate extreme `v`.
fn holds_all(res: Interval, vals: &[Dyadic]) -> bool {
    let [lo, hi] = ends(res);
    vals.iter().all(|v| lo.le(v) && v.le(&hi))
}

/// Randomized containment check of the interval kernel against exact dyadic
/// arithmetic. Returns the first failing case.
pub fn kernel_fuzz(cases: usize, seed: u64) -> Result<(), String> {
    use rand::Rng;
    use sausage_core::Kernel;
    let mut r = rng(seed);
    let stressed = Kernel::stressed(4.0).expect("valid factor");
    for i in 0..cases {
        let a = random_interval(&mut r, 480);
        let b = random_interval(&mut r, 480);
        let k = if i % 8 == 0 { stressed } else { Kernel::EXACT };
        let [al, ah] = ends(a);
        let [bl, bh] = ends(b);
        let op = r.gen_range(0..5);
        let ok = match op {
            0 => holds_all(k.add(a, b), &[al.add(&bl), ah.add(&bh)]),
            1 => holds_all(k.sub(a, b), &[al.add(&bh.neg()), ah.add(&bl.neg())]),
            2 => {
                let p = [al.mul(&bl), al.mul(&bh), ah.mul(&bl), ah.mul(&bh)];
                holds_all(k.mul(a, b), &p)
            }
            3 => match k.div(a, b) {
                Err(_) => b.contains_zero(),
                Ok(q) => {
                    // every a/b lies in [lo, hi] iff lo·b ≤ a ≤ hi·b for b > 0, reversed for b < 0
                    let [ql, qh] = ends(q);
                    let pos = b.lo() > 0.0;
                    [(&al, &bl), (&al, &bh), (&ah, &bl), (&ah, &bh)]
                        .iter()
                        .all(|(x, y)| {
                            let (l, h) = (ql.mul(y), qh.mul(y));
                            if pos {
                                l.le(x) && x.le(&h)
                            } else {
                                h.le(x) && x.le(&l)
                            }
                        })
                }
            },
            _ => {
                let a = a.abs();
                let [al, ah] = ends(a);
                match k.sqrt(a) {
                    Err(_) => false,
                    Ok(s) => {
                        let [sl, sh] = ends(s);
                        sl.mul(&sl).le(&al) && ah.le(&sh.mul(&sh)) && s.lo() >= 0.0
                    }
                }
            }
        };
        if !ok {
            return Err(format!("case {i}: op {op} on {a:?}, {b:?}"));
        }
    }
    Ok(())
}
