use std::collections::BTreeMap;

use num_traits::{One, Zero};
use wmin_core::gram_lab::{
    adjointness_check, apply_mode, boson_basis, boson_norm, deformed_matrix, exp_factorization_check,
    fairlie_matrix, g_half_norm, gram_entry, heisenberg_adjointness_check, j_g_ratio, virasoro_check,
    BosonState, Field, Vector,
};
use wmin_core::levels::{enumerate_unitary_k, level_data};
use wmin_core::rational::{q, qi};
use wmin_core::weights::{a_bound, enumerate_p_plus_k};
use wmin_core::{lookup, AlgebraId, Error, Gq, Q};

fn partitions_count(n: u32) -> usize {
    // Euler's pentagonal recurrence.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = 1;
    for i in 1..=n as i64 {
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[i as usize] += sign * p[(i - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                p[i as usize] += sign * p[(i - g2) as usize];
            }
            k += 1;
        }
    }
    p[n as usize] as usize
}

fn fact(n: u32) -> Q {
    (1..=n).fold(Q::one(), |a, i| a * qi(i as i128))
}

#[test]
fn basis_sizes_are_partition_numbers() {
    for e in 0..=10 {
        let b = boson_basis(e);
        assert_eq!(b.len(), partitions_count(e), "E = {e}");
        assert!(b.iter().all(|s| s.energy() == e));
        let mut sorted = b.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), b.len());
    }
}

#[test]
fn gram_is_diagonal_with_formula_entries() {
    for mu in [Q::zero(), qi(2), q(5, 3)] {
        for e in 0..=6 {
            let b = boson_basis(e);
            for (i, x) in b.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    let g = gram_entry(x, y, mu);
                    if i == j {
                        let mut expect = Q::one();
                        for (&p, &m) in &x.parts {
                            expect *= fact(m) * qi((p as i128).pow(m));
                        }
                        assert_eq!(g, Gq::real(expect));
                        assert_eq!(boson_norm(x), expect);
                    } else {
                        assert!(g.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn l0_is_energy_plus_constant() {
    let s = Gq::imag(q(3, 7));
    let mu = q(5, 3);
    let l0 = fairlie_matrix(s, mu, 0, 6);
    let konst = (Gq::real(mu * mu) - s * s).scale(q(1, 2));
    for (e, m) in &l0.blocks {
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j { konst + Gq::real(qi(*e as i128)) } else { Gq::zero() };
                assert_eq!(*x, expect);
            }
        }
    }
}

#[test]
fn l_minus_one_on_vacuum() {
    let s = Gq::imag(q(1, 2));
    let mu = qi(2);
    let mut v = Vector::new();
    v.insert(BosonState::vacuum(), Gq::one());
    let w = apply_mode(Field::Fairlie { s: s.into() }, -1, mu, &v);
    let mut expect = BTreeMap::new();
    expect.insert(BosonState::from_parts(&[(1, 1)]), Gq::real(mu) + s);
    assert_eq!(w, expect);
}

#[test]
fn virasoro_grid_and_window() {
    for s in [Gq::zero(), Gq::imag(q(1, 2)), Gq::imag(q(3, 7))] {
        for mu in [Q::zero(), q(5, 3)] {
            for n in -2..=2 {
                for m in -2..=2 {
                    assert_eq!(virasoro_check(s, mu, n, m, 6), Ok(true), "s={s} mu={mu} n={n} m={m}");
                }
            }
        }
    }
    assert!(matches!(virasoro_check(Gq::zero(), Q::zero(), 4, -3, 7), Err(Error::WindowTooSmall(_))));
    assert_eq!(virasoro_check(Gq::zero(), Q::zero(), 3, -3, 7), Ok(true));
}

#[test]
fn deformed_field_vacuum_bracket() {
    // [L_2, L_{-2}] on v_0 by hand: only L_2 L_{-2} survives; c = 1 − 12t².
    let t = Gq::imag(q(1, 3));
    let up = deformed_matrix(t, Q::zero(), -2, 4);
    let down = deformed_matrix(t, Q::zero(), 2, 4);
    let l0 = deformed_matrix(t, Q::zero(), 0, 4);
    let vac_up = &up.blocks[&0];
    let vac_down = &down.blocks[&2];
    let mut bracket = Gq::zero();
    for (k, row) in vac_up.iter().enumerate() {
        bracket += vac_down[0][k] * row[0];
    }
    let c = Gq::one() - (t * t).scale(qi(12));
    assert_eq!(bracket, l0.blocks[&0][0][0].scale(qi(4)) + c.scale(q(1, 2)));
}

#[test]
fn adjointness_grid() {
    for s in [Gq::zero(), Gq::imag(q(1, 2))] {
        for mu in [Q::zero(), qi(2)] {
            for n in -3..=3 {
                assert!(adjointness_check(s, mu, n, 6), "s={s} mu={mu} n={n}");
                assert!(heisenberg_adjointness_check(mu, n, 6));
            }
        }
    }
    // A real deformation parameter is not compatible with the form.
    assert!(!adjointness_check(Gq::real(q(1, 2)), qi(2), 1, 4));
}

#[test]
fn exp_factorization_closed_form() {
    let t = Gq::imag(q(2, 5));
    let lt = Field::Deformed { t: t.into() };
    for m in 1..=5u32 {
        let mut v = Vector::new();
        v.insert(BosonState::from_parts(&[(m, 1)]), Gq::one());
        for n in 1..=5u32 {
            v = apply_mode(lt, 1, Q::zero(), &v);
            let mut expect = Vector::new();
            if n < m {
                expect.insert(BosonState::from_parts(&[(m - n, 1)]), Gq::real(fact(m) / fact(m - n)));
            } else if n == m {
                expect.insert(BosonState::vacuum(), t.scale(-qi(2) * fact(n)));
            }
            assert_eq!(v, expect, "n={n} m={m}");
        }
    }
    assert!(exp_factorization_check(t, 5, 5));
    assert!(exp_factorization_check(Gq::zero(), 3, 3));
}

#[test]
fn g_half_norm_vanishes_at_a_and_changes_sign() {
    for id in [AlgebraId::psl22(), AlgebraId::spo2m(5).unwrap(), AlgebraId::f4(), AlgebraId::d21a(1, 2).unwrap()] {
        let e = lookup(id).unwrap();
        for k in enumerate_unitary_k(id, 3) {
            assert!(k + e.h_vee < Q::zero());
            for nu in enumerate_p_plus_k(id, k).unwrap() {
                let a = a_bound(id, k, &nu).unwrap();
                assert_eq!(g_half_norm(id, k, &nu, a), Ok(Q::zero()));
                assert!(g_half_norm(id, k, &nu, a + q(1, 7)).unwrap() > Q::zero());
                assert!(g_half_norm(id, k, &nu, a - q(1, 7)).unwrap() < Q::zero());
            }
        }
    }
    let id = AlgebraId::psl22();
    assert_eq!(
        g_half_norm(id, Q::zero(), &wmin_core::Weight::zero(4), Q::one()),
        Err(Error::CriticalLevel(Q::zero()))
    );
}

#[test]
fn j_g_ratio_is_one_minus_n() {
    for id in [AlgebraId::psl22(), AlgebraId::g3(), AlgebraId::d21a(2, 3).unwrap()] {
        let e = lookup(id).unwrap();
        for k in enumerate_unitary_k(id, 3) {
            let ld = level_data(id, k).unwrap();
            for nu in enumerate_p_plus_k(id, k).unwrap() {
                for c in e.simple_components() {
                    let t = c.theta.as_ref().unwrap();
                    let n_i = ld.m(c.index).unwrap() + c.chi + Q::one() - e.coroot_pairing(&nu, t).unwrap();
                    assert_eq!(j_g_ratio(id, k, &nu, c.index), Ok(Q::one() - n_i));
                }
            }
        }
    }
    assert!(matches!(
        j_g_ratio(AlgebraId::psl22(), -qi(2), &wmin_core::Weight::zero(4), 2),
        Err(Error::IndexOutOfRange(_))
    ));
}
