//! Independent brute-force checks against small cases.

use eaqmds::grs::GrsCode;
use eaqmds::{make_field, Construction, FieldElement, FieldMatrix};

/// x·y in GF(25) = GF(5)[x]/(x² + c1 x + c0), on (constant, linear) pairs.
fn mul25(a: (u32, u32), b: (u32, u32), (c0, c1): (u32, u32)) -> (u32, u32) {
    let (l0, l1, l2) = (a.0 * b.0, a.0 * b.1 + a.1 * b.0, a.1 * b.1);
    // x² = −c1 x − c0
    let r0 = (l0 + l2 * (5 - c0)) % 5;
    let r1 = (l1 + l2 * (5 - c1)) % 5;
    (r0, r1)
}

#[test]
fn gf25_modulus_and_primitive_element() {
    let f = make_field(5, 1).unwrap();

    // first monic quadratic, constant term compared first, with no root in GF(5)
    let mut candidates: Vec<(u32, u32)> = (0..5)
        .flat_map(|c0| (0..5).map(move |c1| (c0, c1)))
        .collect();
    candidates.sort();
    let modulus = candidates
        .into_iter()
        .find(|&(c0, c1)| (0..5).all(|x| (x * x + c1 * x + c0) % 5 != 0))
        .unwrap();
    assert_eq!(f.modulus(), &[modulus.0, modulus.1, 1]);

    let order = |g: (u32, u32)| {
        let mut x = g;
        let mut k = 1;
        while x != (1, 0) {
            x = mul25(x, g, modulus);
            k += 1;
        }
        k
    };
    let mut elements: Vec<(u32, u32)> = (0..5)
        .flat_map(|c0| (0..5).map(move |c1| (c0, c1)))
        .collect();
    elements.sort();
    let xi = elements
        .into_iter()
        .filter(|&e| e != (0, 0))
        .find(|&e| order(e) == 24)
        .unwrap();
    assert_eq!(f.coeffs(f.xi()), vec![xi.0, xi.1]);

    // every product agrees with the polynomial oracle
    for x in f.elements() {
        for y in f.elements() {
            let (cx, cy) = (f.coeffs(x), f.coeffs(y));
            let want = mul25((cx[0], cx[1]), (cy[0], cy[1]), modulus);
            assert_eq!(f.coeffs(f.mul(x, y)), vec![want.0, want.1]);
        }
    }
}

#[test]
fn gf49_code_distance_by_weight_scan() {
    let f = make_field(7, 1).unwrap();
    let eval: Vec<_> = (0..4).map(|i| f.xi_pow(i * 5)).collect();
    let mult = vec![FieldElement::ONE, f.xi(), f.xi_pow(2), f.xi_pow(3)];
    let code = GrsCode::new(&f, eval, mult, 2).unwrap();
    let g = code.generator_matrix();
    let mut min_weight = usize::MAX;
    for u0 in f.elements() {
        for u1 in f.elements() {
            if u0.is_zero() && u1.is_zero() {
                continue;
            }
            let word = g.transpose().mul_vec(&[u0, u1]).unwrap();
            min_weight = min_weight.min(word.iter().filter(|x| !x.is_zero()).count());
        }
    }
    assert_eq!(min_weight, 3);
    assert_eq!(code.min_distance_exhaustive().unwrap(), 3);
    assert!(code.mds_check_by_columns().unwrap());
}

#[test]
fn dual_of_table_code() {
    let c = Construction::from_triple(7, 8, 2).unwrap();
    let rho = c.solve_rho(0).unwrap().rho;
    let code = c.grs_code(&rho, 4).unwrap();
    assert!(code.dual_orthogonality_check());

    let g = code.generator_matrix();
    let h = g.null_space();
    assert_eq!(h.len(), 18 - 4);
    let h = FieldMatrix::from_rows(c.field(), &h).unwrap();
    assert_eq!(h.rank(), 14);
    let product = g.multiply(&h.transpose()).unwrap();
    assert!(product.entries().iter().all(|x| x.is_zero()));
}

#[test]
fn rho_sums_for_q8_written_out() {
    let c = Construction::from_triple(8, 9, 4).unwrap();
    let f = c.field();
    let sol = c.solve_rho(0).unwrap();
    assert_eq!(sol.rho.len(), 5);
    let (t, m) = (7i64, 3i64);
    let mut sums = vec![f.sum(sol.rho.iter().copied())];
    for u in m..m + 4 {
        sums.push(
            f.sum(
                sol.rho
                    .iter()
                    .enumerate()
                    .map(|(l, &r)| f.mul(f.xi_pow(u * t * l as i64), r)),
            ),
        );
    }
    assert!(sums.iter().all(|s| !s.is_zero()));
    assert_eq!(sums, sol.phi);
}

#[test]
fn gram_entries_against_full_inner_products() {
    let c = Construction::from_triple(5, 6, 1).unwrap();
    let f = c.field();
    let rho = c.solve_rho(3).unwrap().rho;
    let code = c.grs_code(&rho, 3).unwrap();
    let g = code.generator_matrix();
    let gram = code.hermitian_gram();
    for r in 0..3 {
        for s in 0..3 {
            let inner = f.sum(
                g.row(r)
                    .iter()
                    .zip(g.row(s))
                    .map(|(&x, &y)| f.mul(x, f.frobenius(y))),
            );
            assert_eq!(gram.get(r, s), inner);
        }
    }
}
