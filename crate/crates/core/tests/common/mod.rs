#![allow(dead_code)]

use ddeq::ddoperator::{Atom, LinOp};
use ddeq::exppoly::{ExpPoly, ZPoly};
use ddeq::scalars::{ExpArg, MPoly, Scalar, Symbol};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn eta() -> Scalar {
    Scalar::param("eta")
}

pub fn eta_arg() -> ExpArg {
    ExpArg(MPoly::var(Symbol::param("eta")))
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Small nonzero rational `n/d`.
pub fn small_rat(r: &mut impl Rng) -> Scalar {
    let n = loop {
        let n = r.gen_range(-6i64..=6);
        if n != 0 {
            break n;
        }
    };
    Scalar::rat(n, r.gen_range(1i64..=4))
}

/// A constant drawn from rationals, `i`, `pi`, `eta` and `exp(eta)`.
pub fn scalar(r: &mut impl Rng) -> Scalar {
    let base = small_rat(r);
    match r.gen_range(0..6) {
        0 | 1 => base,
        2 => base.mul(&Scalar::i()).add(&small_rat(r)),
        3 => base.mul(&Scalar::pi()),
        4 => base.mul(&eta()).add(&small_rat(r)),
        _ => base.mul(&Scalar::exp(&eta_arg()).unwrap()),
    }
}

pub fn zpoly(r: &mut impl Rng, max_deg: usize) -> ZPoly {
    let deg = r.gen_range(0..=max_deg);
    ZPoly::new((0..=deg).map(|_| if r.gen_bool(0.7) { scalar(r) } else { Scalar::zero() }).collect())
}

/// Exponents `0, z, -z, 2z, i z, z/2, z^2`.
pub fn exponent(r: &mut impl Rng) -> ZPoly {
    match r.gen_range(0..7) {
        0 => ZPoly::zero(),
        1 => ZPoly::z(),
        2 => ZPoly::z().neg(),
        3 => ZPoly::from_ints(&[0, 2]),
        4 => ZPoly::monomial(Scalar::i(), 1),
        5 => ZPoly::monomial(Scalar::rat(1, 2), 1),
        _ => ZPoly::monomial(Scalar::one(), 2),
    }
}

pub fn exppoly(r: &mut impl Rng, terms: usize, max_deg: usize) -> ExpPoly {
    let mut out = ExpPoly::zero();
    for _ in 0..r.gen_range(1..=terms) {
        out = out.add(&ExpPoly::term(zpoly(r, max_deg), exponent(r)).unwrap());
    }
    out
}

pub fn shift(r: &mut impl Rng) -> ExpArg {
    let two_pi_i = Scalar::pi().mul(&Scalar::i()).mul(&Scalar::from_int(2));
    let s = match r.gen_range(0..6) {
        0 => Scalar::zero(),
        1 => Scalar::one(),
        2 => Scalar::rat(-1, 2),
        3 => eta(),
        4 => two_pi_i,
        _ => Scalar::i(),
    };
    s.to_exparg().unwrap()
}

pub fn linop(r: &mut impl Rng) -> LinOp {
    let mut op = LinOp::zero();
    for _ in 0..r.gen_range(1..=3) {
        op.add_term(Atom::new(shift(r), r.gen_range(0..=2)), exppoly(r, 1, 2));
    }
    if r.gen_bool(0.5) {
        op = op.add(&LinOp::inhomogeneous(exppoly(r, 2, 2)));
    }
    op
}

/// Solves `m x = rhs` by Gaussian elimination over the exact constants.
pub fn gauss_solve(mut m: Vec<Vec<Scalar>>, mut rhs: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !m[row][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].invert().ok()?;
        for row in 0..n {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].mul(&inv);
            let pivot_row = m[col].clone();
            for (x, p) in m[row].iter_mut().zip(&pivot_row).skip(col) {
                *x = x.sub(&p.mul(&factor));
            }
            let t = rhs[col].mul(&factor);
            rhs[row] = rhs[row].sub(&t);
        }
    }
    Some((0..n).map(|k| rhs[k].mul(&m[k][k].invert().unwrap())).collect())
}

/// Polynomial `f` of degree `deg H` with `2 f' - a f = H`, from the linear system.
pub fn ode_oracle(a: &Scalar, h: &ZPoly) -> Option<ZPoly> {
    let n = h.degree() + 1;
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for j in 0..n {
        m[j][j] = a.neg();
        if j + 1 < n {
            m[j][j + 1] = Scalar::from_int(2 * (j as i64 + 1));
        }
    }
    gauss_solve(m, (0..n).map(|j| h.coeff(j)).collect()).map(ZPoly::new)
}
