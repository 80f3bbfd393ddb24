//! Acceptance criteria 1–12. Each criterion prints one PASS/FAIL line; the
//! process exits nonzero if any criterion fails. Arithmetic is exact, so
//! every comparison is equality.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use comodlim::coalg::{divided_power_coalgebra, standard_corpus, validate_coalgebra, Coalgebra};
use comodlim::colimits::{coequalizer, coimage_factorization, coproduct, kernel_sub, pushout, CoconeResult};
use comodlim::comod::{
    cofree, cofree_factorize, generated_subcomodule, is_dual_homomorphism, random_comodule, random_morphism,
    random_vector, random_vector_in, restrict_coaction, validate_comodule, validate_morphism, ComodMorphism, Comodule,
    Subcomodule,
};
use comodlim::diagram::Diagram;
use comodlim::dsl::{parse_session, print_session, ParseErrorKind, RunOptions, Runner};
use comodlim::exactlin::{intersect, kernel, rank, sum, Rational, RationalMatrix, Subspace};
use comodlim::limits::{
    comodule_limit, equalizer, maximal_coinvariant, maximal_coinvariant_in, maximality_witnesses, mediating_morphism,
    pullback_monos, subobject_join, ConeResult,
};
use comodlim::Error;

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED.wrapping_mul(31).wrapping_add(salt))
}

fn comodule(c: &Arc<Coalgebra>, rng: &mut ChaCha8Rng, max_target: usize) -> Arc<Comodule> {
    let target = rng.gen_range(1..=max_target);
    random_comodule(c, target, rng.gen())
}

fn e(err: Error) -> String {
    err.to_string()
}

fn cols(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

// Independent dual-algebra oracle: with A_k the k-th coaction block,
// Σ_m Δ[(a·n + b), m] A_m = A_b A_a and Σ_k ε_k A_k = I.

fn blocks(v: &Comodule) -> Vec<RationalMatrix> {
    let m = v.dim;
    (0..v.coalgebra.dim).map(|k| v.rho.row_block(k * m, m)).collect()
}

fn module_axioms_hold(v: &Comodule) -> bool {
    let c = &v.coalgebra;
    let n = c.dim;
    let a = blocks(v);
    let mut unit = RationalMatrix::zeros(v.dim, v.dim);
    for (k, ak) in a.iter().enumerate() {
        unit = unit.add(&ak.scale(&c.eps[(0, k)])).unwrap();
    }
    if !unit.is_identity() {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            let mut lhs = RationalMatrix::zeros(v.dim, v.dim);
            for (m, am) in a.iter().enumerate() {
                lhs = lhs.add(&am.scale(&c.delta[(x * n + y, m)])).unwrap();
            }
            if lhs != a[y].mul(&a[x]).unwrap() {
                return false;
            }
        }
    }
    true
}

fn homomorphism_holds(f: &ComodMorphism) -> bool {
    let (s, t) = (blocks(&f.src), blocks(&f.dst));
    s.iter()
        .zip(&t)
        .all(|(a, b)| f.mat.mul(a).unwrap() == b.mul(&f.mat).unwrap())
}

fn dual_oracle(apex: &Comodule, legs: &[ComodMorphism]) -> Result<(), String> {
    ensure(module_axioms_hold(apex), || "apex fails the module axioms".into())?;
    for l in legs {
        ensure(homomorphism_holds(l), || "a leg is not a module homomorphism".into())?;
        ensure(is_dual_homomorphism(l), || {
            "library translation disagrees on a leg".into()
        })?;
    }
    Ok(())
}

// Instances shared by criteria 3–7, 10 and 11.

fn product_families() -> Vec<(Arc<Coalgebra>, Vec<Arc<Comodule>>)> {
    let mut r = rng(3);
    let mut out = Vec::new();
    for c in standard_corpus() {
        let max_target = if c.dim >= 4 { 2 } else { 3 };
        for _ in 0..20 {
            let k = r.gen_range(2..=3);
            let vs = (0..k).map(|_| comodule(&c, &mut r, max_target)).collect();
            out.push((c.clone(), vs));
        }
    }
    out
}

fn parallel_pairs() -> Vec<(ComodMorphism, ComodMorphism)> {
    let mut r = rng(4);
    let corpus = standard_corpus();
    (0..30)
        .map(|i| {
            let c = &corpus[i % corpus.len()];
            let (a, b) = (comodule(c, &mut r, 3), comodule(c, &mut r, 3));
            let f = random_morphism(&a, &b, &mut r).unwrap();
            let g = random_morphism(&a, &b, &mut r).unwrap();
            (f, g)
        })
        .collect()
}

struct ConeCase {
    limit: ConeResult,
    source: Arc<Comodule>,
    chosen: ComodMorphism,
}

fn cone_cases() -> Vec<ConeCase> {
    let mut r = rng(5);
    let mut out = Vec::new();
    for c in standard_corpus() {
        for i in 0..50 {
            let a = comodule(&c, &mut r, 2);
            let b = comodule(&c, &mut r, 2);
            let d = match i % 3 {
                0 => Diagram::discrete(&c, &[a, b]).unwrap(),
                1 => Diagram::parallel_pair(
                    &random_morphism(&a, &b, &mut r).unwrap(),
                    &random_morphism(&a, &b, &mut r).unwrap(),
                )
                .unwrap(),
                _ => {
                    let t = comodule(&c, &mut r, 2);
                    Diagram::cospan(
                        &random_morphism(&a, &t, &mut r).unwrap(),
                        &random_morphism(&b, &t, &mut r).unwrap(),
                    )
                    .unwrap()
                }
            };
            let limit = comodule_limit(&d).unwrap();
            let source = comodule(&c, &mut r, 2);
            let chosen = random_morphism(&source, &limit.apex, &mut r).unwrap();
            out.push(ConeCase { limit, source, chosen });
        }
    }
    out
}

/// Shape tag (0 coproduct, 1 coequalizer, 2 pushout), objects, maps and result.
type ColimitCase = (usize, Vec<Arc<Comodule>>, Vec<ComodMorphism>, CoconeResult);

fn colimit_cases() -> Vec<ColimitCase> {
    let mut r = rng(10);
    let corpus = standard_corpus();
    (0..30)
        .map(|i| {
            let c = &corpus[i % corpus.len()];
            let a = comodule(c, &mut r, 3);
            let b = comodule(c, &mut r, 3);
            match i % 3 {
                0 => {
                    let res = coproduct(c, &[a.clone(), b.clone()]).unwrap();
                    (0, vec![a, b], vec![], res)
                }
                1 => {
                    let f = random_morphism(&a, &b, &mut r).unwrap();
                    let g = random_morphism(&a, &b, &mut r).unwrap();
                    let res = coequalizer(&f, &g).unwrap();
                    (1, vec![a, b], vec![f, g], res)
                }
                _ => {
                    let t = comodule(c, &mut r, 3);
                    let f = random_morphism(&a, &b, &mut r).unwrap();
                    let g = random_morphism(&a, &t, &mut r).unwrap();
                    let res = pushout(&f, &g).unwrap();
                    (2, vec![a, b, t], vec![f, g], res)
                }
            }
        })
        .collect()
}

fn all_limit_runs() -> Vec<ConeResult> {
    let mut out: Vec<ConeResult> = product_families()
        .iter()
        .map(|(c, vs)| comodule_limit(&Diagram::discrete(c, vs).unwrap()).unwrap())
        .collect();
    out.extend(parallel_pairs().iter().map(|(f, g)| equalizer(f, g).unwrap().cone));
    out.extend(cone_cases().into_iter().map(|k| k.limit));
    out
}

fn criterion_1() -> Outcome {
    let mut r = rng(1);
    let mut count = 0;
    for c in standard_corpus() {
        ensure(validate_coalgebra(&c).is_valid(), || {
            format!("{} fails its axioms", c.name)
        })?;
        for i in 0..25 {
            let v = comodule(&c, &mut r, 3);
            ensure(v.dim <= 8, || format!("{} #{i}: dim {}", c.name, v.dim))?;
            ensure(validate_comodule(&v).is_valid(), || {
                format!("{} #{i}: invalid comodule", c.name)
            })?;
            count += 1;
        }
    }
    Ok(format!("6 coalgebras, {count} comodules"))
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let mut count = 0;
    for c in standard_corpus() {
        let n = c.dim;
        for i in 0..100 {
            let v = comodule(&c, &mut r, 3);
            let x = r.gen_range(1..=2);
            let data = (0..x * v.dim).map(|_| Rational::from(r.gen_range(-2i64..=2))).collect();
            let f = RationalMatrix::from_vec(x, v.dim, data).unwrap();
            let cf = cofree(&c, x);
            let lift = cofree_factorize(&v, &f, &cf).map_err(e)?;
            let expected = RationalMatrix::identity(n).kron(&f).mul(&v.rho).unwrap();
            ensure(lift.morphism.mat == expected, || {
                format!("{} #{i}: f' ≠ (Id⊗f)ρ", c.name)
            })?;
            ensure(cf.p.mul(&lift.morphism.mat).unwrap() == f, || {
                format!("{} #{i}: p·f' ≠ f", c.name)
            })?;
            ensure(lift.uniqueness_kernel_dim == 0, || {
                format!("{} #{i}: kernel dim {}", c.name, lift.uniqueness_kernel_dim)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

fn criterion_3() -> Outcome {
    let families = product_families();
    for (i, (c, vs)) in families.iter().enumerate() {
        ensure(vs.iter().all(|v| v.dim <= 6), || {
            format!("family {i}: factor above dim 6")
        })?;
        let d = Diagram::discrete(c, vs).unwrap();
        let lim = comodule_limit(&d).map_err(e)?;
        let total: usize = vs.iter().map(|v| v.dim).sum();
        ensure(lim.apex.dim == total, || {
            format!("family {i}: apex dim {} ≠ {total}", lim.apex.dim)
        })?;
        let sum_obj = comodlim::colimits::direct_sum(c, vs).map_err(e)?;
        let sum_cone = comodlim::limits::direct_sum_cone(c, vs).map_err(e)?;
        let to_lim = mediating_morphism(&sum_obj.comodule, &sum_obj.projections, &lim).map_err(e)?;
        let to_sum = mediating_morphism(&lim.apex, &lim.legs, &sum_cone).map_err(e)?;
        ensure(to_lim.map.mat.mul(&to_sum.map.mat).unwrap().is_identity(), || {
            format!("family {i}: limit → sum → limit is not the identity")
        })?;
        ensure(to_sum.map.mat.mul(&to_lim.map.mat).unwrap().is_identity(), || {
            format!("family {i}: sum → limit → sum is not the identity")
        })?;
    }
    Ok(format!("{} families", families.len()))
}

fn criterion_4() -> Outcome {
    let pairs = parallel_pairs();
    let mut nontrivial = 0;
    for (i, (f, g)) in pairs.iter().enumerate() {
        let eq = equalizer(f, g).map_err(e)?;
        let by_kernel = kernel(&f.mat.sub(&g.mat).unwrap());
        let pj = eq.cone.cofree.p.mul(&eq.cone.j.mat).unwrap();
        let transported = Subspace::from_spanning(&eq.cone.projections[0].mul(&pj).unwrap()).unwrap();
        ensure(transported == by_kernel, || format!("pair {i}: routes differ"))?;
        let sub = kernel_sub(&f.sub(g).map_err(e)?).map_err(e)?;
        ensure(sub.space == by_kernel, || {
            format!("pair {i}: kernel_sub(f - g) differs")
        })?;
        ensure(eq.routes_agree, || format!("pair {i}: library reports disagreement"))?;
        nontrivial += usize::from(!by_kernel.is_zero() && !by_kernel.is_full());
    }
    Ok(format!(
        "{} pairs, {nontrivial} with a proper nonzero equalizer",
        pairs.len()
    ))
}

fn criterion_5() -> Outcome {
    let cases = cone_cases();
    let mut nonzero = 0;
    for (i, k) in cases.iter().enumerate() {
        let legs: Vec<_> = k.limit.legs.iter().map(|l| l.compose(&k.chosen).unwrap()).collect();
        let m = match mediating_morphism(&k.source, &legs, &k.limit) {
            Err(Error::Fatal(msg)) => return Err(format!("case {i}: fatal: {msg}")),
            other => other.map_err(e)?,
        };
        ensure(
            k.limit
                .d
                .contains(&Subspace::from_spanning(&m.lifted).unwrap())
                .unwrap(),
            || format!("case {i}: image of the lift leaves D"),
        )?;
        ensure(m.map.mat == k.chosen.mat, || format!("case {i}: mediating map differs"))?;
        ensure(m.uniqueness_kernel_dim == 0, || {
            format!("case {i}: kernel dim {}", m.uniqueness_kernel_dim)
        })?;
        nonzero += usize::from(!k.chosen.mat.is_zero());
    }
    Ok(format!("{} cones, {nonzero} with a nonzero chosen map", cases.len()))
}

fn check_trace(tag: &str, trace: &[usize], start: usize, end: usize, ambient: usize) -> Result<(), String> {
    ensure(trace.windows(2).all(|p| p[0] > p[1]), || {
        format!("{tag}: trace {trace:?} not decreasing")
    })?;
    ensure(trace.len() <= ambient + 1, || {
        format!("{tag}: trace {trace:?} too long")
    })?;
    ensure(trace.first() == Some(&start) && trace.last() == Some(&end), || {
        format!("{tag}: trace {trace:?} does not run from {start} to {end}")
    })
}

/// Random subspaces of cofree comodules, where the descent actually shrinks.
fn random_fixed_points() -> Vec<(Arc<Comodule>, Subspace, comodlim::limits::FixedPoint)> {
    let mut r = rng(7);
    let corpus = standard_corpus();
    (0..30)
        .map(|i| {
            let c = &corpus[i % corpus.len()];
            let amb = cofree(c, r.gen_range(1..=2)).comodule;
            let k = r.gen_range(1..=amb.dim);
            let vs: Vec<_> = (0..k).map(|_| random_vector(&mut r, amb.dim)).collect();
            let w = Subspace::from_vectors(amb.dim, &vs).unwrap();
            let fp = maximal_coinvariant(&amb, &w).unwrap();
            (amb, w, fp)
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let dp = divided_power_coalgebra(2).unwrap();
    let c1 = Subspace::from_vectors(2, &[vec![Rational::from(0), Rational::from(1)]]).unwrap();
    let hand = maximal_coinvariant_in(&dp, 1, &c1).map_err(e)?;
    ensure(hand.space.is_zero(), || "hand example: fixed point not zero".into())?;
    ensure(hand.trace == [1, 0], || format!("hand example: trace {:?}", hand.trace))?;
    let runs = all_limit_runs();
    for (i, r) in runs.iter().enumerate() {
        check_trace(
            &format!("limit {i}"),
            &r.trace,
            r.w.dim(),
            r.d.dim(),
            r.cofree.comodule.dim,
        )?;
        ensure(r.iterations <= r.cofree.comodule.dim + 1, || {
            format!("limit {i}: {} iterations", r.iterations)
        })?;
    }
    let mut shrinking = 0;
    for (i, (amb, w, fp)) in random_fixed_points().iter().enumerate() {
        check_trace(&format!("subspace {i}"), &fp.trace, w.dim(), fp.space.dim(), amb.dim)?;
        ensure(restrict_coaction(amb, &fp.space).is_ok(), || {
            format!("subspace {i}: D not coinvariant")
        })?;
        shrinking += usize::from(fp.trace.len() > 1);
    }
    Ok(format!(
        "hand example [1, 0]; {} limit runs; 30 random subspaces, {shrinking} shrinking",
        runs.len()
    ))
}

fn criterion_7() -> Outcome {
    let mut in_runs = 0;
    for (i, r) in all_limit_runs().iter().enumerate() {
        if r.w.dim() == r.d.dim() {
            continue;
        }
        in_runs += 1;
        let m = maximality_witnesses(r, 20, i as u64).map_err(e)?;
        ensure(m.holds(), || {
            format!("limit {i}: {} witnesses stayed in W", m.checked - m.escaped)
        })?;
    }
    let mut r = rng(77);
    let mut extra = 0;
    for (i, (amb, w, fp)) in random_fixed_points().iter().enumerate() {
        if w.dim() == fp.space.dim() {
            continue;
        }
        extra += 1;
        let mut checked = 0;
        while checked < 20 {
            let v = random_vector_in(w, &mut r);
            if fp.space.contains_vector(&v).unwrap() {
                continue;
            }
            checked += 1;
            let g = generated_subcomodule(amb, &[v]).map_err(e)?;
            ensure(!w.contains(&g.space).unwrap(), || {
                format!("subspace {i}: a witness stayed in W")
            })?;
        }
    }
    Ok(format!(
        "{in_runs} limit runs with W ≠ D (W is coinvariant in all of them); {extra} random subspaces × 20 witnesses"
    ))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let corpus = standard_corpus();
    for i in 0..30 {
        let c = &corpus[i % corpus.len()];
        let (a, b) = (comodule(c, &mut r, 3), comodule(c, &mut r, 3));
        let f = random_morphism(&a, &b, &mut r).map_err(e)?;
        let fac = coimage_factorization(&f).map_err(e)?;
        let mid = fac.middle().dim;
        ensure(fac.k.mat.mul(&fac.coim.mat).unwrap() == f.mat, || {
            format!("#{i}: k∘coim ≠ f")
        })?;
        ensure(mid == rank(&f.mat), || format!("#{i}: middle dim {mid} ≠ rank f"))?;
        ensure(rank(&fac.coim.mat) == fac.coim.mat.rows(), || {
            format!("#{i}: coim not full row rank")
        })?;
        ensure(rank(&fac.k.mat) == fac.k.mat.cols(), || {
            format!("#{i}: k not full column rank")
        })?;
        ensure(
            validate_morphism(&fac.coim).is_valid() && validate_morphism(&fac.k).is_valid(),
            || format!("#{i}: a factor is not a comodule map"),
        )?;
    }
    Ok("30 morphisms".into())
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let corpus = standard_corpus();
    let sub = |amb: &Arc<Comodule>, r: &mut ChaCha8Rng| -> Subcomodule {
        let k = r.gen_range(1..=2);
        let seeds: Vec<_> = (0..k).map(|_| random_vector(r, amb.dim)).collect();
        generated_subcomodule(amb, &seeds).unwrap()
    };
    for i in 0..30 {
        let c = &corpus[i % corpus.len()];
        let amb = cofree(c, r.gen_range(1..=2)).comodule;
        let (a, b, t) = (sub(&amb, &mut r), sub(&amb, &mut r), sub(&amb, &mut r));
        let meet = |x: &Subcomodule, y: &Subcomodule| pullback_monos(x, y).unwrap();
        let join = |x: &Subcomodule, y: &Subcomodule| subobject_join(x, y).unwrap();
        let (ab, jab) = (meet(&a, &b), join(&a, &b));
        ensure(ab.space == intersect(&a.space, &b.space).unwrap(), || {
            format!("#{i}: meet ≠ intersection")
        })?;
        ensure(jab.space == sum(&a.space, &b.space).unwrap(), || {
            format!("#{i}: join ≠ sum")
        })?;
        ensure(ab.space == meet(&b, &a).space, || format!("#{i}: meet not commutative"))?;
        ensure(jab.space == join(&b, &a).space, || {
            format!("#{i}: join not commutative")
        })?;
        ensure(meet(&ab, &t).space == meet(&a, &meet(&b, &t)).space, || {
            format!("#{i}: meet not associative")
        })?;
        ensure(join(&jab, &t).space == join(&a, &join(&b, &t)).space, || {
            format!("#{i}: join not associative")
        })?;
        ensure(join(&a, &ab).space == a.space, || {
            format!("#{i}: join does not absorb meet")
        })?;
        ensure(meet(&a, &jab).space == a.space, || {
            format!("#{i}: meet does not absorb join")
        })?;
        for (name, s) in [("meet", &ab), ("join", &jab)] {
            ensure(restrict_coaction(&amb, &s.space).is_ok(), || {
                format!("#{i}: {name} not coinvariant")
            })?;
        }
    }
    Ok("30 triples".into())
}

fn criterion_10() -> Outcome {
    let cases = colimit_cases();
    for (i, (shape, objs, maps, res)) in cases.iter().enumerate() {
        ensure(res.certificate.passed(), || format!("#{i}: {}", res.certificate))?;
        ensure(res.uniqueness_kernel_dim == 0, || {
            format!("#{i}: kernel dim {}", res.uniqueness_kernel_dim)
        })?;
        ensure(validate_comodule(&res.apex).is_valid(), || {
            format!("#{i}: apex fails axioms")
        })?;
        let expected = match shape {
            0 => objs[0].dim + objs[1].dim,
            1 => {
                let rel = maps[0].mat.sub(&maps[1].mat).unwrap();
                objs[1].dim - generated_subcomodule(&objs[1], &cols(&rel)).unwrap().dim()
            }
            _ => {
                // B ⊕ C modulo the subcomodule generated by (f(a), -g(a)).
                let sum = comodlim::colimits::direct_sum(&objs[0].coalgebra, &objs[1..]).unwrap();
                let rel = maps[0].mat.vstack(&maps[1].mat.neg()).unwrap();
                sum.comodule.dim - generated_subcomodule(&sum.comodule, &cols(&rel)).unwrap().dim()
            }
        };
        ensure(res.apex.dim == expected, || {
            format!("#{i}: apex dim {} ≠ {expected}", res.apex.dim)
        })?;
    }
    Ok(format!("{} instances (coproduct, coequalizer, pushout)", cases.len()))
}

fn criterion_11() -> Outcome {
    let mut count = 0;
    for (i, r) in all_limit_runs().iter().enumerate() {
        dual_oracle(&r.apex, &r.legs).map_err(|m| format!("limit {i}: {m}"))?;
        count += 1;
    }
    for (i, (_, _, _, r)) in colimit_cases().iter().enumerate() {
        dual_oracle(&r.apex, &r.legs).map_err(|m| format!("colimit {i}: {m}"))?;
        count += 1;
    }
    Ok(format!("{count} apexes with their legs"))
}

fn sessions_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("sessions")
}

fn criterion_12() -> Outcome {
    let mut files: Vec<_> = std::fs::read_dir(sessions_dir())
        .map_err(|err| err.to_string())?
        .map(|d| d.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cmd") && !p.ends_with("malformed.cmd"))
        .collect();
    files.sort();
    ensure(files.len() >= 10, || format!("only {} session files", files.len()))?;
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(path).unwrap();
        let session = parse_session(&text).map_err(|err| format!("{name}: {err}"))?;
        let printed = print_session(&session);
        let reparsed = parse_session(&printed).map_err(|err| format!("{name}: reprint fails: {err}"))?;
        ensure(print_session(&reparsed) == printed, || {
            format!("{name}: printing is not idempotent")
        })?;

        let mut first = Runner::new(RunOptions::default());
        first.run(&session);
        let code = first.transcript().exit_code();
        let expected = if name == "not_coinvariant.cmd" { 1 } else { 0 };
        ensure(code == expected, || format!("{name}: exit code {code}"))?;
        if code != 0 {
            continue;
        }
        let explicit = first.explicit_session();
        let mut second = Runner::new(RunOptions::default());
        second.run(&parse_session(&explicit).map_err(|err| format!("{name}: explicit form: {err}"))?);
        ensure(second.explicit_session() == explicit, || {
            format!("{name}: explicit form not idempotent")
        })?;
        let emitted = |r: &Runner| -> Vec<_> { r.transcript().entries.iter().map(|e| e.result.clone()).collect() };
        ensure(emitted(&first) == emitted(&second), || {
            format!("{name}: explicit form emits differently")
        })?;
    }

    let malformed = std::fs::read_to_string(sessions_dir().join("malformed.cmd")).unwrap();
    let err = parse_session(&malformed).err().ok_or("malformed.cmd parsed")?;
    ensure((err.span.line, err.span.column) == (3, 23), || {
        format!("malformed.cmd: error at {}", err.span)
    })?;
    ensure(matches!(err.kind, ParseErrorKind::UnclosedBracket { .. }), || {
        format!("malformed.cmd: {err}")
    })?;

    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_comodlim"))
        .args(["selftest", "--seed", "42"])
        .output()
        .map_err(|err| err.to_string())?;
    let took = start.elapsed();
    ensure(out.status.code() == Some(0), || {
        format!(
            "selftest exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stdout)
        )
    })?;
    ensure(took < Duration::from_secs(300), || format!("selftest took {took:.1?}"))?;
    Ok(format!(
        "{} sessions round-trip; malformed input at 3:23; selftest --seed 42 exit 0 in {took:.2?}",
        files.len()
    ))
}

fn main() -> ExitCode {
    type Criterion = (u8, &'static str, fn() -> Outcome, u64);
    let criteria: [Criterion; 12] = [
        (1, "axiom suites", criterion_1, 10),
        (2, "cofree universal property", criterion_2, 30),
        (3, "finite product = direct sum", criterion_3, 60),
        (4, "equalizer cross-oracle", criterion_4, 30),
        (5, "limit universal property", criterion_5, 60),
        (6, "fixed-point behavior", criterion_6, 120),
        (7, "maximality witnesses", criterion_7, 120),
        (8, "coimage factorization", criterion_8, 60),
        (9, "subobject lattice", criterion_9, 60),
        (10, "colimit suite", criterion_10, 60),
        (11, "dual-module oracle", criterion_11, 120),
        (12, "session language and selftest", criterion_12, 600),
    ];
    let mut failed = 0;
    for (n, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if took > Duration::from_secs(limit) {
                Err(format!("took {took:.1?}, limit {limit} s"))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS {name}: {detail} ({took:.2?})"),
            Err(reason) => {
                failed += 1;
                println!("criterion {n:>2} FAIL {name}: {reason} ({took:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
