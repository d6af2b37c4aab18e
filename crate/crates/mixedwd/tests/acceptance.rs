//! Acceptance suite: one PASS/FAIL line per criterion, with its time limit.
//! Exits non-zero when any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::*;
use mixedwd::exact::{q, qf, Matrix, Subspace, Q};
use mixedwd::mixedfilt::cg::{clebsch_gordan, verify_clebsch_gordan};
use mixedwd::mixedfilt::ml2::{log_unipotent, ml2_act, std_action, ML2Element};
use mixedwd::mixedfilt::splitting::satisfies_definition;
use mixedwd::mixedfilt::{canonical_splitting, cokernel_of, is_strict, kernel_of, structure_decompose, weak_lift, FilteredWDRep};
use mixedwd::pi1::{lyndon_count, lyndon_words, FreeTruncation};
use mixedwd::selmer::cocycle::{coface0, coface1, z1_via_cofaces};
use mixedwd::selmer::examples::{abelian_line, free_class3, heisenberg, heisenberg_monodromy, monodromy_pair, upper_triangular};
use mixedwd::selmer::normalize::normal_cocycle;
use mixedwd::selmer::{
    act_g, curve_selmer_dim, curve_selmer_oracle, normalize_f, normalize_g, normalize_g_by_solve, selmer_dims, vge, z1g_check, CurveSelmerInput, D0Point, D1Point,
    GCocycle, Label, PhiNLieDatum,
};
use mixedwd::wdrep::WDRep;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e:?}"))
}

fn two_dim(qq: i64, lambda: Q) -> FilteredWDRep {
    let phi = Matrix::diag(&[q(1), qf(1, qq)]);
    let mut n = Matrix::zeros(2, 2);
    n[(1, 0)] = lambda;
    let rep = WDRep::new(BigInt::from(qq), phi, n).unwrap();
    let mut w = BTreeMap::new();
    w.insert(-2, vec![vec![q(0), q(1)]]);
    w.insert(0, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
    FilteredWDRep::from_bases(rep, &w).unwrap()
}

fn c1_two_dim_example() -> Outcome {
    let mut cases = 0;
    for qq in [2, 3, 4] {
        for lambda in [q(0), q(1), qf(-2, 3)] {
            let v = two_dim(qq, lambda.clone());
            let s = ok(canonical_splitting(&v), "splitting")?;
            ensure!(s.lift(0) == Matrix::from_ints(&[&[1], &[0]]), "q={qq} lambda={lambda}: v0 lift {:?}", s.lift(0));
            ensure!(s.lift(-2) == Matrix::from_ints(&[&[0], &[1]]), "q={qq} lambda={lambda}: v2 lift {:?}", s.lift(-2));
            ensure!(s.is_n_equivariant(&v) == lambda.is_zero(), "q={qq} lambda={lambda}: N-equivariance");
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn c2_splitting() -> Outcome {
    let mut r = rng(0xA2);
    let mut non_equivariant = 0;
    let mut max_dim = 0;
    for k in 0..200 {
        let v = random_mixed(&mut r, 2 + (k % 3) as i64, 8, false);
        max_dim = max_dim.max(v.dim());
        ensure!(ok(v.check_mixed(), "mixed")?.mixed, "case {k}: generator produced a non-mixed rep");
        let s = ok(canonical_splitting(&v), "splitting")?;
        ensure!(satisfies_definition(&v, &s), "case {k}: splitting fails its defining conditions");
        let id = v.pieces().iter().map(|p| (p.weight, Matrix::identity(p.dim()))).collect();
        let lift = ok(weak_lift(&v.graded(), &v, &id), "weak lift not unique")?;
        ensure!(lift == s.matrix, "case {k}: weak lift differs from the splitting");
        if !s.is_n_equivariant(&v) {
            non_equivariant += 1;
        }
    }
    ensure!(non_equivariant > 0, "no case exercised a non-N-equivariant splitting");
    for k in 0..200 {
        let a = random_mixed(&mut r, 3, 3, false);
        let b = random_mixed(&mut r, 3, 3, false);
        let t = ok(a.tensor(&b), "tensor")?;
        let (sa, sb, st) = (ok(canonical_splitting(&a), "split")?, ok(canonical_splitting(&b), "split")?, ok(canonical_splitting(&t), "split")?);
        for w in t.weights() {
            let mut expect = Matrix::zeros(t.dim(), t.dim());
            for i in a.weights() {
                expect = &expect + &sa.projector(i).kron(&sb.projector(w - i));
            }
            ensure!(st.projector(w) == expect, "tensor pair {k}: projector {w} differs");
        }
    }
    let mut nonzero = 0;
    for k in 0..200 {
        let a = random_mixed(&mut r, 2, 5, false);
        let c = random_mixed(&mut r, 2, 3, false);
        let b = ok(a.direct_sum(&c), "sum")?;
        let (v1, v2) = if k % 2 == 0 { (&a, &b) } else { (&b, &a) };
        let f = random_morphism(&mut r, v1, v2);
        nonzero += usize::from(!f.is_zero());
        let (s1, s2) = (ok(canonical_splitting(v1), "split")?, ok(canonical_splitting(v2), "split")?);
        ensure!(&f * &s1.matrix == &s2.matrix * &graded_block_matrix(v1, v2, &f), "morphism {k}: not compatible with splittings");
    }
    Ok(format!("200 reps up to dim {max_dim} ({non_equivariant} non-N-equivariant), 200 tensor pairs, 200 morphisms ({nonzero} nonzero)"))
}

fn c3_strictness() -> Outcome {
    let mut r = rng(0xA3);
    let (mut nonzero, mut noninjective) = (0, 0);
    for k in 0..200 {
        let a = random_mixed(&mut r, 2, 4, false);
        let c = random_mixed(&mut r, 2, 3, false);
        let b = ok(a.direct_sum(&c), "sum")?;
        let (v1, v2) = if k % 2 == 0 { (&b, &a) } else { (&a, &b) };
        let f = random_morphism(&mut r, v1, v2);
        nonzero += usize::from(!f.is_zero());
        noninjective += usize::from(f.rank() < v1.dim());
        ensure!(v1.is_filtered_map(v2, &f), "morphism {k}: not filtered");
        ensure!(is_strict(v1, v2, &f), "morphism {k}: not strict");
        ensure!(ok(ok(kernel_of(v1, &f), "kernel")?.check_mixed(), "kernel")?.mixed, "morphism {k}: kernel not mixed");
        ensure!(ok(ok(cokernel_of(v2, &f), "cokernel")?.check_mixed(), "cokernel")?.mixed, "morphism {k}: cokernel not mixed");
    }
    ensure!(nonzero > 100 && noninjective > 50, "too few interesting morphisms ({nonzero} nonzero, {noninjective} non-injective)");
    let mut pairs = 0;
    for _ in 0..100 {
        let (p1, w1) = pure_piece(&mut r, 3, 4, false);
        let (p2, w2) = pure_piece(&mut r, 3, 4, false);
        if w1 == w2 {
            continue;
        }
        let homs = hom_basis(&FilteredWDRep::pure(p1.clone(), w1), &FilteredWDRep::pure(p2.clone(), w2));
        ensure!(homs.is_empty(), "nonzero filtered map from weight {w1} to weight {w2}");
        if w1 > w2 {
            // downwards the filtration is no constraint: Frobenius and N alone kill it
            ensure!(hom_basis(&FilteredWDRep::pure(p1, 0), &FilteredWDRep::pure(p2, 0)).is_empty(), "nonzero map from weight {w1} to weight {w2}");
        }
        pairs += 1;
    }
    Ok(format!("200 morphisms ({nonzero} nonzero, {noninjective} non-injective), {pairs} pure pairs"))
}

fn c4_structure() -> Outcome {
    let mut r = rng(0xA4);
    for k in 0..100 {
        let v = random_mixed(&mut r, 2, 7, false);
        let sd = ok(structure_decompose(&v), "decompose")?;
        ensure!((&sd.embedding * &sd.inverse).is_identity(), "rep {k}: embedding not invertible");
        let s = ok(canonical_splitting(&v), "split")?;
        for b in &sd.blocks {
            let cols = sd.block_columns(b);
            let span = Subspace::col_span(&cols);
            ensure!((v.rep().phi() * &cols).col_vecs().iter().all(|c| span.contains(c)), "rep {k}: block ({}, {}) not Frobenius stable", b.i, b.j);
            ensure!(cols == &s.lift(b.i) * &b.gr_map, "rep {k}: block ({}, {}) disagrees with the splitting", b.i, b.j);
        }
    }
    let qq = BigInt::from(2);
    for j1 in 0..=4 {
        for j2 in 0..=4 {
            ensure!(verify_clebsch_gordan(j1, j2, &qq), "generators of std_{j1} ⊗ std_{j2}");
            let t = ok(WDRep::make_std(j1, qq.clone(), 0), "std")?.tensor(&WDRep::make_std(j2, qq.clone(), 0).unwrap()).unwrap();
            let i = -((j1 + j2) as i64);
            let sd = ok(structure_decompose(&FilteredWDRep::pure(t, i)), "decompose")?;
            let gens = clebsch_gordan(j1, j2);
            ensure!(sd.components.len() == gens.len(), "std_{j1} ⊗ std_{j2}: {} components", sd.components.len());
            for (rr, g) in gens {
                let key = (i, j1 + j2 - 2 * rr);
                let comp = sd.components.get(&key).ok_or_else(|| format!("missing component {key:?}"))?;
                ensure!(*comp == Subspace::span(g.len(), &[g.clone()]), "std_{j1} ⊗ std_{j2}: component {key:?}");
            }
        }
    }
    let g11 = clebsch_gordan(1, 1)[1].1.clone();
    ensure!(g11 == vec![q(0), q(-1), q(1), q(0)], "(1,1) generator {g11:?}");
    Ok("100 random reps, std_j1 ⊗ std_j2 for j <= 4".into())
}

fn c5_semisimplicity() -> Outcome {
    let mut r = rng(0xA5);
    let (mut total, mut non_ss) = (0, 0);
    for _ in 0..300 {
        let v = random_mixed(&mut r, 2, 6, true);
        let a = v.rep().is_frobenius_semisimple();
        ensure!(a == v.graded().rep().is_frobenius_semisimple(), "disagreement on a rep of dim {}", v.dim());
        total += 1;
        non_ss += usize::from(!a);
    }
    ensure!(non_ss > 20, "only {non_ss} non-semisimple cases");
    Ok(format!("{total} reps, {non_ss} not Frobenius semisimple"))
}

fn ml2_element(r: &mut impl Rng) -> ML2Element {
    loop {
        let (a, b, c) = (small_q(r), small_q(r), small_q(r));
        if a.is_zero() {
            continue;
        }
        let s = q(r.gen_range(1..=3)) * if r.gen_bool(0.5) { q(1) } else { q(-1) };
        let d = (&s * &s + &b * &c) / &a;
        return ML2Element::new(a, b, c, d, s).unwrap();
    }
}

fn c6_metalinear() -> Outcome {
    for j in 0..=6 {
        let s = ok(WDRep::make_std(j, BigInt::from(3), 0), "std")?;
        let lx = log_unipotent(&std_action(&ML2Element::x(), j, 0)).ok_or("X not unipotent")?;
        ensure!(lx == *s.n(), "log X != N on std_{j}");
        let ly = log_unipotent(&std_action(&ML2Element::y(), j, 0)).ok_or("Y not unipotent")?;
        let mut e = Matrix::zeros(j + 1, j + 1);
        for rr in 1..=j {
            e[(rr - 1, rr)] = q(rr as i64);
        }
        ensure!(ly == e, "log Y on std_{j}");
    }
    let mut r = rng(0xA6);
    for k in 0..60 {
        let v = random_mixed(&mut r, 2, 5, false);
        let (m1, m2) = (ml2_element(&mut r), ml2_element(&mut r));
        let lhs = ok(ml2_act(&m1.mul(&m2), &v), "act")?;
        ensure!(lhs == &ok(ml2_act(&m1, &v), "act")? * &ok(ml2_act(&m2, &v), "act")?, "case {k}: not multiplicative");
    }
    Ok("std_j for j <= 6, 60 products".into())
}

fn c7_curves() -> Outcome {
    let anchors = [
        (CurveSelmerInput::new(1, 1, 2, 1, &[]), 3),
        (CurveSelmerInput::new(1, 0, 2, 1, &[(Label::U(1, 1), 1)]), 3),
    ];
    for (inp, want) in anchors {
        let inp = ok(inp, "anchor")?;
        ensure!(curve_selmer_dim(&inp).1 == want && curve_selmer_oracle(&inp) == want, "anchor {inp:?}");
    }
    let mut cases = 0;
    for g in 1..=3u64 {
        for g0 in 0..=g {
            let rr = 2 * (g - g0);
            let mut configs: Vec<Vec<(Label, u64)>> = vec![];
            if rr == 0 {
                configs.push(vec![]);
            } else {
                configs.push(vec![(Label::S, rr)]);
                configs.push(vec![(Label::St, rr)]);
                configs.push(vec![(Label::S, 1), (Label::St, rr - 1)]);
                configs.push(vec![(Label::U(1, 1), rr / 2)]);
                if rr >= 2 {
                    configs.push(vec![(Label::U(1, 1), 1), (Label::S, rr - 2)]);
                }
                if rr >= 4 {
                    configs.push(vec![(Label::U(1, 1), 1), (Label::U(2, -1), 1), (Label::St, rr - 4)]);
                }
            }
            for nu in &configs {
                for n in 1..=5 {
                    for deg in 1..=2 {
                        let inp = ok(CurveSelmerInput::new(g, g0, n, deg, nu), "input")?;
                        let (ef, dg) = curve_selmer_dim(&inp);
                        let oracle = curve_selmer_oracle(&inp);
                        ensure!(dg == oracle, "{inp:?}: formula {dg}, oracle {oracle}");
                        ensure!(ef <= dg, "{inp:?}: dim_f {ef} > dim_g {dg}");
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} grid points and 2 anchors"))
}

fn selmer_data() -> Vec<(&'static str, PhiNLieDatum)> {
    let ip = |p: i64| qf(-1, p);
    vec![
        ("heisenberg", heisenberg(3).unwrap()),
        ("heisenberg_monodromy", heisenberg_monodromy(2).unwrap()),
        ("monodromy_pair", monodromy_pair(3).unwrap()),
        ("free_class3", free_class3(2, [[q(0), ip(2)], [q(1), q(0)]], &[]).unwrap()),
        ("free_class3 F0=span(z)", free_class3(3, [[q(0), ip(3)], [q(1), q(0)]], &[mixedwd::exact::matrix::unit_vec(5, 2)]).unwrap()),
    ]
}

fn random_in(r: &mut impl Rng, s: &Subspace) -> Vec<Q> {
    s.basis().mul_vec(&small_vec(r, s.dim()))
}

fn c8_cocycles() -> Outcome {
    let mut r = rng(0xA8);
    let data = selmer_data();
    let mut count = 0;
    let mut nonzero_v0 = 0;
    for k in 0..120 {
        let (name, d) = &data[k % data.len()];
        let fixed = ok(vge(d), "vge")?.phi_fixed;
        let v0 = random_in(&mut r, &fixed);
        nonzero_v0 += usize::from(v0.iter().any(|c| !c.is_zero()));
        let (w1, w2) = (small_vec(&mut r, d.dim()), small_vec(&mut r, d.dim()));
        let z = random_in(&mut r, d.f0());
        let c = ok(act_g(d, &normal_cocycle(d, &d.identity(), &v0), &d.identity(), &w1), "act")?;
        ensure!(z1g_check(d, &c), "{name}: acted cocycle fails the cocycle condition");
        let nf = ok(normalize_g(d, &c.v, &c.u), "normalize_g")?;
        ensure!(nf.v0 == v0 && fixed.contains(&nf.v0), "{name}: normal form {:?} vs {:?}", nf.v0, v0);
        ensure!(nf.w == d.inv(&w1), "{name}: acting element not recovered");
        let back = ok(act_g(d, &c, &d.identity(), &nf.w), "act")?;
        ensure!(back.v == v0 && back.u == d.identity(), "{name}: action by the normalizer does not reach (v0, 1)");
        ensure!(ok(normalize_g_by_solve(d, &c.v, &c.u), "solve")? == nf, "{name}: the two normalizers disagree");
        let c2 = ok(act_g(d, &c, &z, &w2), "act")?;
        let nf2 = ok(normalize_g(d, &c2.v, &c2.u), "normalize_g")?;
        ensure!(nf2.v0 == v0, "{name}: v0 not constant on the orbit");
        ensure!(nf2.w == d.inv(&d.mul(&w1, &w2)), "{name}: orbit element not recovered");
        count += 1;
    }
    ensure!(nonzero_v0 > 0, "every sampled v0 was zero");
    let mut fcount = 0;
    for k in 0..60 {
        let (name, d) = &data[k % data.len()];
        let ker = Subspace::kernel(d.n());
        let (u, w) = (random_in(&mut r, &ker), random_in(&mut r, &ker));
        let u2 = d.mul_all(&[&d.inv(&w), &u, &d.apply_phi(&w)]);
        let (a, b) = (ok(normalize_f(d, &u), "normalize_f")?, ok(normalize_f(d, &u2), "normalize_f")?);
        ensure!(d.mul_all(&[&d.inv(&a), &u, &d.apply_phi(&a)]) == d.identity(), "{name}: f normal form is not 1");
        ensure!(b == d.mul(&d.inv(&w), &a), "{name}: f normalizer not unique");
        fcount += 1;
    }
    Ok(format!("{count} g-cocycles ({nonzero_v0} with v0 != 0), {fcount} f-points"))
}

fn c9_cofaces() -> Outcome {
    let mut r = rng(0xA9);
    let data = selmer_data();
    for k in 0..120 {
        let (name, d) = &data[k % data.len()];
        let a = D0Point { x0: small_vec(&mut r, d.dim()), u0: small_vec(&mut r, d.dim()) };
        let f = |i: usize, j: usize| coface1(d, j, &coface0(d, i, &a).unwrap()).unwrap();
        ensure!(f(0, 1) == f(0, 0) && f(0, 2) == f(1, 0) && f(1, 2) == f(1, 1), "{name}: cosimplicial identity");
    }
    let (mut yes, mut no) = (0, 0);
    for k in 0..200 {
        let (name, d) = &data[k % data.len()];
        let c = if k % 2 == 0 {
            let v0 = random_in(&mut r, &ok(vge(d), "vge")?.phi_fixed);
            let w = small_vec(&mut r, d.dim());
            let mut c = ok(act_g(d, &normal_cocycle(d, &d.identity(), &v0), &d.identity(), &w), "act")?;
            c.x = small_vec(&mut r, d.dim());
            c
        } else {
            GCocycle { x: small_vec(&mut r, d.dim()), v: small_vec(&mut r, d.dim()), u: small_vec(&mut r, d.dim()) }
        };
        let direct = z1g_check(d, &c);
        ensure!(direct == z1_via_cofaces(d, &D1Point::from_cocycle(d, &c)), "{name}: conditions disagree");
        if direct {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure!(yes >= 100 && no > 0, "{yes} cocycles, {no} non-cocycles");
    Ok(format!("120 identity points, {yes} cocycles, {no} non-cocycles"))
}

fn c10_pi1() -> Outcome {
    let qq = BigInt::from(2);
    for n in 1..=4 {
        let t = ok(FreeTruncation::tate(n, qq.clone()), "tate")?;
        let v = ok(t.weight_filtration(&Subspace::zero(t.dim())), "filtration")?;
        ensure!(ok(v.check_mixed(), "mixed")?.mixed, "Tate truncation n={n} is not mixed");
        ensure!(v.rep().is_frobenius_semisimple(), "Tate truncation n={n} is not semisimple");
    }
    for m in 1..=3 {
        let eig = vec![qf(1, 2); m];
        let t = ok(FreeTruncation::new(m, 5, qq.clone(), eig, &[]), "truncation")?;
        let got = t.primitive_dims();
        for (i, &d) in got.iter().enumerate() {
            let witt = lyndon_count(&BigInt::from(m), i as u64 + 1);
            ensure!(BigInt::from(d) == witt, "m={m} i={}: {d} primitives, Witt count {witt}", i + 1);
            ensure!(lyndon_words(m, i + 1).len() == d, "m={m} i={}: Duval enumeration", i + 1);
        }
    }
    Ok("Tate n <= 4; primitives for m <= 3, i <= 5".into())
}

type Triple = (usize, usize, usize);

fn triple(d: &PhiNLieDatum, deg: usize) -> Result<Triple, String> {
    let s = ok(selmer_dims(d, deg), "selmer_dims")?;
    Ok((s.dim_e, s.dim_f, s.dim_g))
}

/// Splits off the lowest weight step, which must be central, and checks
/// additivity; recurses on the quotient.
fn check_tower(name: &str, d: &PhiNLieDatum, height: usize) -> Result<usize, String> {
    if height == 0 || d.dim() == 0 {
        return Ok(0);
    }
    let low = d.stored_w().values().find(|s| s.dim() > 0).cloned().ok_or("empty filtration")?;
    if low.dim() == d.dim() {
        return Ok(0);
    }
    let zb = low.basis().clone();
    for z in zb.col_vecs() {
        for e in 0..d.dim() {
            let x = mixedwd::exact::matrix::unit_vec(d.dim(), e);
            ensure!(d.bracket(&z, &x).iter().all(Q::is_zero), "{name}: lowest step is not central");
        }
    }
    let sub = ok(d.sub(&zb), "sub")?;
    let (quot, _) = ok(d.quotient(&low), "quotient")?;
    for deg in 1..=2 {
        let (a, b, c) = (triple(d, deg)?, triple(&sub, deg)?, triple(&quot, deg)?);
        ensure!(a == (b.0 + c.0, b.1 + c.1, b.2 + c.2), "{name} deg {deg}: {a:?} != {b:?} + {c:?}");
    }
    Ok(1 + check_tower(name, &quot, height - 1)?)
}

fn c11_selmer_dims() -> Outcome {
    ensure!(triple(&ok(abelian_line(3), "line")?, 1)? == (1, 1, 2), "abelian line");
    let unit = mixedwd::exact::matrix::unit_vec;
    let rot = |p: i64| [[q(0), qf(-1, p)], [q(1), q(0)]];
    let towers = vec![
        ("heisenberg", heisenberg(3).unwrap()),
        ("heisenberg_monodromy", heisenberg_monodromy(2).unwrap()),
        ("upper_triangular 3", upper_triangular(3, 2).unwrap()),
        ("upper_triangular 4", upper_triangular(4, 3).unwrap()),
        ("free_class3", free_class3(2, rot(2), &[]).unwrap()),
        ("free_class3 F0=span(z)", free_class3(2, rot(2), &[unit(5, 2)]).unwrap()),
        ("free_class3 F0=span(z, a)", free_class3(3, rot(3), &[unit(5, 2), unit(5, 3)]).unwrap()),
        ("free_class3 F0=span(x)", free_class3(5, rot(5), &[unit(5, 0)]).unwrap()),
    ];
    let mut steps = 0;
    for (name, d) in &towers {
        steps += check_tower(name, d, 3)?;
    }
    Ok(format!("{} towers, {steps} extensions", towers.len()))
}

fn main() {
    let criteria: Vec<(usize, &str, u64, fn() -> Outcome)> = vec![
        (1, "two-dimensional example", 1, c1_two_dim_example),
        (2, "splitting uniqueness and functoriality", 60, c2_splitting),
        (3, "strictness and kernels", 60, c3_strictness),
        (4, "structure decomposition", 30, c4_structure),
        (5, "semisimplicity transfer", 10, c5_semisimplicity),
        (6, "metalinear action", 10, c6_metalinear),
        (7, "curve formula against Lyndon oracle", 120, c7_curves),
        (8, "cocycle normal forms", 60, c8_cocycles),
        (9, "cosimplicial consistency", 30, c9_cofaces),
        (10, "pi1 truncations", 60, c10_pi1),
        (11, "selmer dimensions", 10, c11_selmer_dims),
    ];
    let mut failed = 0;
    for (k, name, limit, f) in criteria {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        let res = match res {
            Ok(m) if t > Duration::from_secs(limit) => Err(format!("{m}; over the time limit")),
            other => other,
        };
        let (tag, msg) = match res {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("{tag} {k:>2} {name}: {msg} ({:.2}s, limit {limit}s)", t.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
