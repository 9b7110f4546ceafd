//! Entry-by-entry comparison of the built tables against independent
//! arithmetic models of the same groups (cocycle formulas worked out by
//! hand), pinning down the collection machinery.

use zerosum_core::constructions::{build_paper_group, PaperGroupSpec};

/// dsd(n): elements h^e g^i at index e*n + i, with
/// (e1, i1) * (e2, i2) = (e1 + e2, (-1)^{e2} i1 + i2).
#[test]
fn dihedral_model_matches() {
    for n in [3u64, 4, 6, 8, 9] {
        let t = build_paper_group(&PaperGroupSpec::Dsd(vec![n]), 4096).unwrap();
        let n = n as usize;
        for e1 in 0..2 {
            for i1 in 0..n {
                for e2 in 0..2 {
                    for i2 in 0..n {
                        let x = e1 * n + i1;
                        let y = e2 * n + i2;
                        let e = (e1 + e2) % 2;
                        let i = if e2 == 1 {
                            (n - i1 + i2) % n
                        } else {
                            (i1 + i2) % n
                        };
                        assert_eq!(
                            t.mul(x, y),
                            e * n + i,
                            "dsd({n}): ({e1},{i1})*({e2},{i2})"
                        );
                    }
                }
            }
        }
    }
}

/// G2(a,b,c): elements b^j a^i at index j*2^a + i, with a^i b^j = b^j a^{i m^j}
/// for m = 1 + 2^{a-c}, so (j1,i1)*(j2,i2) = (j1+j2, i1 m^{j2} + i2).
#[test]
fn g2_model_matches() {
    for (alpha, beta, gamma) in [(2u32, 2u32, 1u32), (3, 2, 1), (3, 1, 1), (4, 2, 2)] {
        let spec = PaperGroupSpec::G2 { alpha, beta, gamma };
        let t = build_paper_group(&spec, 4096).unwrap();
        let oa = 1usize << alpha;
        let ob = 1usize << beta;
        let m = 1u64 + (1 << (alpha - gamma));
        let pow_m = |j: usize| -> u64 {
            let mut acc = 1u64;
            for _ in 0..j {
                acc = acc * m % oa as u64;
            }
            acc
        };
        for j1 in 0..ob {
            for i1 in 0..oa {
                for j2 in 0..ob {
                    for i2 in 0..oa {
                        let x = j1 * oa + i1;
                        let y = j2 * oa + i2;
                        let j = (j1 + j2) % ob;
                        let i = (i1 as u64 * pow_m(j2) + i2 as u64) % oa as u64;
                        assert_eq!(
                            t.mul(x, y),
                            j * oa + i as usize,
                            "{spec}: ({j1},{i1})*({j2},{i2})"
                        );
                    }
                }
            }
        }
    }
}

/// G1(a,b,c): elements b^k a^j c^i at index (k*2^a + j)*2^c + i, with the
/// central cocycle (k1,j1,i1)*(k2,j2,i2) = (k1+k2, j1+j2, i1+i2+j1*k2).
#[test]
fn g1_model_matches() {
    for (alpha, beta, gamma) in [(1u32, 1u32, 1u32), (2, 1, 1), (2, 2, 1), (2, 2, 2)] {
        let spec = PaperGroupSpec::G1 { alpha, beta, gamma };
        let t = build_paper_group(&spec, 4096).unwrap();
        let oa = 1usize << alpha;
        let ob = 1usize << beta;
        let oc = 1usize << gamma;
        let idx = |k: usize, j: usize, i: usize| (k * oa + j) * oc + i;
        for k1 in 0..ob {
            for j1 in 0..oa {
                for i1 in 0..oc {
                    for k2 in 0..ob {
                        for j2 in 0..oa {
                            for i2 in 0..oc {
                                let expect = idx(
                                    (k1 + k2) % ob,
                                    (j1 + j2) % oa,
                                    (i1 + i2 + j1 * k2) % oc,
                                );
                                assert_eq!(
                                    t.mul(idx(k1, j1, i1), idx(k2, j2, i2)),
                                    expect,
                                    "{spec}: ({k1},{j1},{i1})*({k2},{j2},{i2})"
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}
