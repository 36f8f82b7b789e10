use multisum::error::Error;
use multisum::matrix::Matrix;
use multisum::oracle::{power_term, SequenceSpec};
use multisum::poly::{p, Var};
use multisum::power::{build_power_phi, derive_power_recurrence, power_stack_columns, PowerBasis};
use multisum::ratfunc::{rf, RatFunc};
use multisum::recurrence::Recurrence;
use multisum::scalar::CycloNumber;
use num_rational::BigRational;
use rand::{rngs::StdRng, Rng, SeedableRng};

pub fn sym(k: u32) -> SequenceSpec {
    SequenceSpec::symbolic(2).unwrap().with_power(k).unwrap()
}

pub fn num(a: i64, b: i64, k: u32) -> SequenceSpec {
    SequenceSpec::numeric(vec![CycloNumber::from_int(a), CycloNumber::from_int(b)]).unwrap().with_power(k).unwrap()
}

pub fn q(s: &str) -> RatFunc {
    rf(s, "1")
}

pub fn idx(labels: &[String], l: &str) -> usize {
    labels.iter().position(|x| x == l).unwrap_or_else(|| panic!("label {l} not in {labels:?}"))
}

/// `printed` is a coordinate matrix (columns are images) in the listed bases.
pub fn assert_printed(m: &Matrix<RatFunc>, src: &PowerBasis, dst: &PowerBasis, cols: &[&str], rows: &[&str], printed: &[Vec<RatFunc>]) {
    let sl = src.labels();
    let dl = dst.labels();
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(m.get(idx(&dl, r), idx(&sl, c)), &printed[i][j], "row {r}, column {c}");
        }
    }
}

pub fn basis(k: usize, level: usize) -> PowerBasis {
    PowerBasis::new(k, level, false).unwrap()
}

/// The third printed basis lists `a_n^{2,1}` first; level two only holds
/// `(2,0), (1,1), (0,2)`, so that label is read as `(2,0)`.
pub fn printed_k3_matrices() {
    let s = sym(3);
    let z = RatFunc::zero();
    let w0 = ["00@0", "12@1", "21@1"];
    let w1 = ["10@0", "01@0", "22@1"];
    let w2 = ["20@0", "02@0", "11@0"];
    assert_printed(
        &build_power_phi(&s, 0).unwrap(),
        &basis(3, 0),
        &basis(3, 1),
        &w0,
        &w1,
        &[
            vec![rf("1", "n"), q("b*(1 + n)^2"), z.clone()],
            vec![rf("1", "n"), z.clone(), q("a*(n + 1)^2")],
            vec![z.clone(), rf("1", "n + 1"), rf("1", "n + 1")],
        ],
    );
    assert_printed(
        &build_power_phi(&s, 1).unwrap(),
        &basis(3, 1),
        &basis(3, 2),
        &w1,
        &w2,
        &[
            vec![rf("1", "n"), z.clone(), q("b*(1 + n)^2")],
            vec![z.clone(), rf("1", "n"), q("a*(1 + n)^2")],
            vec![rf("1", "n"), rf("1", "n"), z.clone()],
        ],
    );
    assert_printed(
        &build_power_phi(&s, 2).unwrap(),
        &basis(3, 2),
        &basis(3, 0),
        &w2,
        &w0,
        &[
            vec![q("n^2*a"), q("n^2*b"), z.clone()],
            vec![z.clone(), rf("1", "n"), rf("1", "n")],
            vec![rf("1", "n"), z.clone(), rf("1", "n")],
        ],
    );
    assert_eq!(build_power_phi(&s, 3).unwrap_err(), Error::InvalidStage { stage: 3, k: 3 });
}

pub fn k3_stacked_matrix() {
    let st = power_stack_columns(&sym(3), 3).unwrap();
    assert_eq!(st.col(3), vec![RatFunc::one(), RatFunc::zero(), RatFunc::zero()]);
    assert_eq!(st.get(0, 2), &q("a + b"));
    // printed as 3/(n − 1)³; the image of c_{n−2} lands in W_{n−3}, so the index is n − 2
    assert_eq!(st.get(1, 2), &rf("3", "(n - 2)^3"));
    assert_eq!(st.get(2, 2), &rf("3", "(n - 2)^3"));
    assert_eq!(st.get(0, 1), &(&rf("6*(n - 2)*(3*n - 5)*a*b", "(n - 1)^2") + &q("(a + b)^2")));
    assert_eq!(st.get(1, 1), &rf("3*(n - 1)*(2*n - 3)*b + 3*a*(5*n^2 - 16*n + 13)", "(n - 2)^3*(n - 1)^2"));
    assert_eq!(st.get(2, 1), &rf("3*(n - 1)*(2*n - 3)*a + 3*b*(5*n^2 - 16*n + 13)", "(n - 2)^3*(n - 1)^2"));
    assert_eq!(
        st.get(0, 0),
        &(&rf("3*a*b*(a + b)*(3*(n - 2)*(n - 1)^2*(9*n - 4) + 4*n)", "(n - 1)^2*n^2") + &q("(a + b)^3"))
    );
    for i in 1..3 {
        let e = st.get(i, 0);
        assert_eq!(e.den(), &p("n^2*(n - 1)^2*(n - 2)^3").primitive_normalize().unwrap().1);
        assert_eq!(e.num().degree_in(Var::N), 4);
        assert_eq!(e.num().total_degree() - 4, 2);
    }
}

/// The 3×3 minor of the k = 3 stacked matrix on the listed columns.
pub fn k3_minor(cols: [usize; 3]) -> RatFunc {
    let st = power_stack_columns(&sym(3), 3).unwrap();
    Matrix::from_cols(cols.iter().map(|&c| st.col(c)).collect()).determinant().unwrap()
}

pub fn printed_k3_determinant() -> RatFunc {
    rf("9*(a + b)^2*(a - b)*(3*n - 2)", "n^2*(n - 1)^2*(n - 2)^3")
}

pub fn k3_determinants() {
    // columns of c_n, c_{n−1}, c_{n−2}: vanishes exactly at a = ±b
    assert_eq!(k3_minor([0, 1, 2]), rf("9*(a + b)^3*(a - b)*(3*n - 2)", "n^2*(n - 1)^2*(n - 2)^3"));
    // columns of c_{n−1}, c_{n−2}, c_{n−3}
    assert_eq!(k3_minor([1, 2, 3]), rf("9*(a - b)*(3*n - 5)", "(n - 1)^2*(n - 2)^5"));
    // every 3×3 minor is homogeneous of degree 4 in (a, b), so a cubic numerator is impossible
    assert_ne!(k3_minor([0, 1, 2]), printed_k3_determinant());
    assert_ne!(k3_minor([1, 2, 3]), printed_k3_determinant());
}

pub fn printed_k3_recurrence() -> Recurrence {
    Recurrence::new(vec![
        p("3*n^2*(3*n - 5)"),
        p("-(27*n^3 - 72*n^2 + 51*n - 12)*(a + b)"),
        p("-((a + b)^2 + (3*n - 5)*((a + b)^2 + (9*a*b - (a + b)^2)*(3*n - 4)*(3*n - 2)))"),
        p("-3*(a + b)^3*(n - 2)^2*(3*n - 2)"),
    ])
    .unwrap()
}

pub fn random_pairs(count: usize, seed: u64) -> Vec<(BigRational, BigRational)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut r = || loop {
        let v = BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into());
        if v != BigRational::from_integer(0.into()) {
            return v;
        }
    };
    (0..count).map(|_| (r(), r())).collect()
}

pub fn k3_recurrence_matches_print() {
    let got = derive_power_recurrence(&sym(3)).unwrap();
    assert_eq!(got, printed_k3_recurrence());
    assert_eq!(got.term_count(), 4);
    for (a, b) in random_pairs(10, 7) {
        let (a, b) = (CycloNumber::from_rational(a), CycloNumber::from_rational(b));
        let seq: Vec<CycloNumber> = (0..=30).map(|n| power_term(&a, &b, 3, n).unwrap()).collect();
        let r = got.specialize(&[a, b]).unwrap();
        assert_eq!(r.first_failure(&seq).unwrap(), None);
    }
}
