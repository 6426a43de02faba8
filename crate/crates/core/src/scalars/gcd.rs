//! Multivariate polynomial gcd over Q(i) by recursive primitive remainder
//! sequences. Variable counts here are tiny (pi plus a few parameters), so the
//! coefficient growth of the plain primitive PRS is not a concern.

use super::mpoly::{MPoly, Symbol};

/// Monic gcd (leading coefficient 1 in graded-lex order). `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a.len() == 1 || b.len() == 1 {
        let m = a.monomial_content().gcd(&b.monomial_content());
        return MPoly::term(m, super::gauss::GaussRat::one());
    }
    let mut syms = a.symbols();
    syms.extend(b.symbols());
    syms.sort();
    syms.dedup();
    recursive_gcd(a, b, &syms[0]).monic()
}

fn recursive_gcd(a: &MPoly, b: &MPoly, x: &Symbol) -> MPoly {
    let ua = a.to_univariate(x);
    let ub = b.to_univariate(x);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd(&ca, &cb);
    let mut pa = primitive(&ua, &ca);
    let mut pb = primitive(&ub, &cb);
    if degree(&pa) < degree(&pb) {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g = loop {
        if degree(&pb) == 0 {
            break vec![MPoly::one()];
        }
        let r = pseudo_rem(&pa, &pb);
        if r.iter().all(MPoly::is_zero) {
            break pb;
        }
        let cr = content(&r);
        pa = pb;
        pb = primitive(&r, &cr);
    };
    let gc = content(&g);
    let g = primitive(&g, &gc);
    c.mul(&MPoly::from_univariate(x, &g))
}

fn degree(u: &[MPoly]) -> usize {
    u.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn trim(mut u: Vec<MPoly>) -> Vec<MPoly> {
    while u.len() > 1 && u.last().is_some_and(MPoly::is_zero) {
        u.pop();
    }
    u
}

fn content(u: &[MPoly]) -> MPoly {
    let mut acc = MPoly::zero();
    for c in u {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive(u: &[MPoly], cont: &MPoly) -> Vec<MPoly> {
    if cont.is_zero() {
        return u.to_vec();
    }
    trim(u.iter().map(|c| c.div_exact(cont).expect("content divides every coefficient")).collect())
}

/// lc(b)^(deg a - deg b + 1) * a mod b.
fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = degree(b);
    let lb = &b[db];
    let mut r = trim(a.to_vec());
    let mut steps = degree(&r) as i64 - db as i64 + 1;
    while !r.iter().all(MPoly::is_zero) && degree(&r) >= db {
        let dr = degree(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bc) in b.iter().enumerate().take(db + 1) {
            r[k + shift] = r[k + shift].sub(&bc.mul(&lr));
        }
        r = trim(r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u32);
        r = r.into_iter().map(|c| c.mul(&f)).collect();
    }
    r
}
