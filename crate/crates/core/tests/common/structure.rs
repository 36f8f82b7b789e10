use std::collections::HashMap;

use multisum::matrix::Matrix;
use multisum::oracle::{aux_term, EpsVector, SequenceSpec};
use multisum::poly::{MultiPoly, Var};
use multisum::ratfunc::{rf, RatFunc};
use multisum::scalar::CycloNumber;
use multisum::weighted::{build_phi, build_psi, enumerate_basis, stack_columns};

/// Expands the shorthands `A = a + b + c` and `B = ab + bc + ca`.
pub fn x(s: &str) -> String {
    s.replace('A', "(a + b + c)").replace('B', "(a*b + b*c + c*a)")
}

pub fn r(num: &str, den: &str) -> RatFunc {
    rf(&x(num), &x(den))
}

pub fn sum(items: &[RatFunc]) -> RatFunc {
    items.iter().fold(RatFunc::zero(), |acc, t| &acc + t)
}

/// Cyclic relabeling `a → b → c → a` applied to a rational function.
pub fn rotate(f: &RatFunc) -> RatFunc {
    let m: HashMap<Var, MultiPoly> = [
        (Var::weight(0), MultiPoly::var(Var::weight(1))),
        (Var::weight(1), MultiPoly::var(Var::weight(2))),
        (Var::weight(2), MultiPoly::var(Var::weight(0))),
    ]
    .into_iter()
    .collect();
    f.substitute(&m).unwrap()
}

pub fn idx(labels: &[String], l: &str) -> usize {
    labels.iter().position(|x| x == l).unwrap_or_else(|| panic!("label {l} not in {labels:?}"))
}

/// `printed[i][j]` is the coefficient of `dst[j]` in the image of `src[i]`
/// (the "source = P · target" layout).
pub fn assert_source_rows(m: &Matrix<RatFunc>, src: &[&str], dst: &[&str], printed: &[Vec<RatFunc>], parts: usize, parity: u8) {
    let sl = enumerate_basis(parts, parity).labels();
    let dl = enumerate_basis(parts, 1 - parity).labels();
    for (i, s) in src.iter().enumerate() {
        for (j, d) in dst.iter().enumerate() {
            assert_eq!(m.get(idx(&dl, d), idx(&sl, s)), &printed[i][j], "image of {s} at {d}");
        }
    }
}

pub fn weights3(a: i64, b: i64, c: i64) -> SequenceSpec {
    SequenceSpec::numeric(vec![CycloNumber::from_int(a), CycloNumber::from_int(b), CycloNumber::from_int(c)])
        .unwrap()
}

pub fn assign(spec: &SequenceSpec, n: i64) -> HashMap<Var, CycloNumber> {
    let mut m: HashMap<Var, CycloNumber> = HashMap::new();
    m.insert(Var::N, CycloNumber::from_int(n));
    if let Some(w) = spec.numeric_weights() {
        for (i, v) in w.iter().enumerate() {
            m.insert(Var::weight(i), v.clone());
        }
    }
    m
}

pub fn value(f: &RatFunc, at: &HashMap<Var, CycloNumber>) -> CycloNumber {
    let v = f.substitute_scalars(at).unwrap();
    v.num().constant_value().unwrap() * v.den().constant_value().unwrap().inv().unwrap()
}

pub fn basis_values(spec: &SequenceSpec, parity: u8, n: i64) -> Vec<CycloNumber> {
    enumerate_basis(spec.parts(), parity)
        .entries
        .iter()
        .map(|(s, e)| aux_term(spec, n + *s as i64, e).unwrap())
        .collect()
}

/// `v_src = Mᵀ v_dst` evaluated at `n`.
pub fn contracts(m: &Matrix<RatFunc>, spec: &SequenceSpec, n: i64, src: Vec<CycloNumber>, dst: Vec<CycloNumber>) -> bool {
    let at = assign(spec, n);
    (0..m.cols()).all(|s| {
        let mut acc = CycloNumber::from_int(0);
        for t in 0..m.rows() {
            acc += &(&value(m.get(t, s), &at) * &dst[t]);
        }
        acc == src[s]
    })
}

pub fn two_part_maps() {
    let spec = SequenceSpec::symbolic(2).unwrap();
    let phi0 = build_phi(&spec, 0).unwrap();
    assert_source_rows(
        &phi0,
        &["00@0", "11@1"],
        &["10@0", "01@0"],
        &[vec![r("1", "n"), r("1", "n")], vec![r("(n + 1)*b", "1"), r("(n + 1)*a", "1")]],
        2,
        0,
    );
    let phi1 = build_phi(&spec, 1).unwrap();
    assert_source_rows(
        &phi1,
        &["10@0", "01@0"],
        &["00@0", "11@1"],
        &[vec![r("n*a", "1"), r("1", "n")], vec![r("n*b", "1"), r("1", "n")]],
        2,
        1,
    );
    let psi = build_psi(&spec).unwrap();
    let printed = Matrix::from_rows(vec![
        vec![r("a + b", "1"), r("2*a*b*n*(n + 1)", "1")],
        vec![r("2", "n^2"), r("(a + b)*(n + 1)", "n")],
    ]);
    assert_eq!(psi, printed);
    let two = stack_columns(&spec, 2).unwrap();
    assert_eq!(two.get(0, 0), &r("(a + b)^2*n + 4*a*b*(n - 1)", "n"));
    assert_eq!(two.get(1, 0), &r("2*(2*n - 1)*(a + b)", "(n - 1)^2*n"));
}

pub fn three_part_maps() {
    let spec = SequenceSpec::symbolic(3).unwrap();
    let l0 = ["000@0", "011@1", "101@1", "110@1"];
    let l1 = ["111@1", "100@0", "010@0", "001@0"];
    let z = RatFunc::zero();
    let q = |s: &str| r(s, "1");
    let phi0 = build_phi(&spec, 0).unwrap();
    assert_source_rows(
        &phi0,
        &l0,
        &l1,
        &[
            vec![z.clone(), r("1", "n"), r("1", "n"), r("1", "n")],
            vec![r("1", "n + 1"), z.clone(), q("(n + 1)*c"), q("(n + 1)*b")],
            vec![r("1", "n + 1"), q("c*(n + 1)"), z.clone(), q("(n + 1)*a")],
            vec![r("1", "n + 1"), q("b*(n + 1)"), q("(n + 1)*a"), z.clone()],
        ],
        3,
        0,
    );
    let phi1 = build_phi(&spec, 1).unwrap();
    assert_source_rows(
        &phi1,
        &l1,
        &l0,
        &[
            vec![z.clone(), q("(n + 1)*a"), q("(n + 1)*b"), q("(n + 1)*c")],
            vec![q("n*a"), z.clone(), r("1", "n"), r("1", "n")],
            vec![q("n*b"), r("1", "n"), z.clone(), r("1", "n")],
            vec![q("n*c"), r("1", "n"), r("1", "n"), z.clone()],
        ],
        3,
        1,
    );
    // the printed Ψ has images as columns, in the canonical order
    let psi = build_psi(&spec).unwrap();
    let printed = Matrix::from_rows(vec![
        vec![q("A"), q("2*c*b*n*(n + 1)"), q("2*a*c*n*(n + 1)"), q("2*b*a*n*(n + 1)")],
        vec![r("2", "n^2"), r("A*n + b + c", "n"), r("2*a*n + a", "n"), r("2*a*n + a", "n")],
        vec![r("2", "n^2"), r("2*b*n + b", "n"), r("A*n + a + c", "n"), r("2*b*n + b", "n")],
        vec![r("2", "n^2"), r("2*c*n + c", "n"), r("2*c*n + c", "n"), r("A*n + a + b", "n")],
    ]);
    assert_eq!(psi, printed);
}

pub fn g0(n_shift: i64) -> RatFunc {
    r("2*(n - 1)*(4*n - 3)*a + 2*A*n*(2*n - 1)", "n^2*(n - 1)^2").shift(Var::N, n_shift)
}

pub fn h1() -> RatFunc {
    sum(&[
        q3("A^3"),
        r("4*(3*n^2 - 13*n + 13)*A*B", "(n - 1)*(n - 2)"),
        r("12*(n - 3)*(4*n - 7)*a*b*c", "(n - 1)^2"),
    ])
}

pub fn h0() -> RatFunc {
    sum(&[
        q3("A^4"),
        r("4*A^2*B*(6*n^3 - 28*n^2 + 37*n - 12)", "n*(n - 1)*(n - 2)"),
        r("16*B^2*(n - 1)*(n - 3)", "n*(n - 2)"),
        r("4*A*a*b*c*(10*n^2 - 10*n + 3)*(4*n - 7)*(n - 3)", "n^2*(n - 1)^2"),
        r("12*A*a*b*c*(4*n - 3)*(2*n - 5)", "n^2"),
    ])
}

pub fn g1() -> RatFunc {
    sum(&[
        r("(4*n - 7)*(10*A - 4*a)*a", "(n - 1)^2*(n - 3)"),
        -r("6*(2*n - 3)*A*a", "(n - 1)^2*(n - 2)^2*(n - 3)"),
        -r("2*(n - 2)*(A^2 - 4*B)", "(n - 1)*(n - 3)^2"),
        r("2*(2*n - 5)*(2*n - 3)*A^2", "(n - 1)*(n - 2)*(n - 3)^2"),
    ])
}

pub fn q3(s: &str) -> RatFunc {
    r(s, "1")
}

pub fn stacked_columns_three_parts() {
    let spec = SequenceSpec::symbolic(3).unwrap();
    let st = stack_columns(&spec, 4).unwrap();
    assert_eq!((st.rows(), st.cols()), (4, 5));
    assert_eq!(st.col(4), vec![RatFunc::one(), RatFunc::zero(), RatFunc::zero(), RatFunc::zero()]);
    let two = r("2", "(n - 3)^2");
    assert_eq!(st.col(3), vec![q3("A"), two.clone(), two.clone(), two]);
    let g = g0(-2);
    assert_eq!(
        st.col(2),
        vec![r("A^2*(n - 2) + 4*B*(n - 3)", "n - 2"), g.clone(), rotate(&g), rotate(&rotate(&g))]
    );
    assert_eq!(st.get(0, 1), &h1());
}

pub fn hidden_columns_by_rank_and_contraction() {
    // the leftmost columns: the listed closed forms, ranks, and oracle contraction
    let spec = SequenceSpec::symbolic(3).unwrap();
    let st = stack_columns(&spec, 4).unwrap();
    assert_eq!(st.get(1, 1), &g1());
    assert_eq!(st.get(0, 0), &h0());
    for (w, rank) in [((2, 3, 5), 4), ((1, 3, 7), 4), ((2, 2, 5), 3), ((1, 4, 4), 3), ((1, 1, 1), 2), ((3, 3, 3), 2)] {
        let s = weights3(w.0, w.1, w.2);
        let sw: HashMap<Var, CycloNumber> =
            s.numeric_weights().unwrap().iter().enumerate().map(|(i, v)| (Var::weight(i), v.clone())).collect();
        let num = st.try_map(|f| f.substitute_scalars(&sw)).unwrap();
        assert_eq!(num.rank(), rank, "weights {w:?}");
        // a_{n−j} = Σ_t st[t][j] · value of basis element t of W_{n−4}^0
        for n in 5..=9i64 {
            let dst = basis_values(&s, 0, n - 4);
            let at = assign(&s, n);
            for j in 0..5 {
                let mut acc = CycloNumber::from_int(0);
                for t in 0..4 {
                    acc += &(&value(num.get(t, j), &at) * &dst[t]);
                }
                let want = aux_term(&s, n - j as i64, &EpsVector::zero(3)).unwrap();
                assert_eq!(acc, want, "column {j} at n = {n}");
            }
        }
    }
}
