//! Seeded randomized property suites, one per acceptance criterion 1–11.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalg::{divided_power_coalgebra, standard_corpus, validate_coalgebra, Coalgebra};
use crate::colimits::{coequalizer, coimage_factorization, coproduct, pushout, CoconeResult};
use crate::comod::{
    cofree, cofree_factorize, generated_subcomodule, is_dual_homomorphism, random_comodule, random_morphism,
    random_vector, random_vector_in, restrict_coaction, to_dual_module, validate_comodule, validate_morphism,
    ComodMorphism, Comodule, Subcomodule,
};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::exactlin::{rank, Rational, RationalMatrix, Subspace};
use crate::limits::{
    comodule_limit, equalizer, maximal_coinvariant, maximal_coinvariant_in, maximality_witnesses, mediating_morphism,
    product_comparison, pullback_monos, subobject_join, ConeResult,
};

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub criterion: u8,
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub fatal: bool,
    pub elapsed: Duration,
}

impl SuiteOutcome {
    fn new(criterion: u8, name: &'static str) -> Self {
        SuiteOutcome {
            criterion,
            name,
            cases: 0,
            failures: Vec::new(),
            fatal: false,
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.fatal
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn error(&mut self, context: &str, e: Error) {
        self.fatal |= e.is_fatal();
        self.failures.push(format!("{context}: {e}"));
    }

    /// Records the error of a failed step and returns `None`.
    fn ok<T>(&mut self, context: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.error(context, e);
                None
            }
        }
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "[{status}] criterion {:>2} {}: {} cases in {:.2?}",
            self.criterion, self.name, self.cases, self.elapsed
        );
        if let Some(first) = self.failures.first() {
            s.push_str(&format!(" ({} failures; first: {first})", self.failures.len()));
        }
        s
    }
}

/// Process exit status for a set of outcomes: 3 if any suite hit a fatal
/// branch, 2 if any check failed, 0 otherwise.
pub fn exit_code(outcomes: &[SuiteOutcome]) -> i32 {
    if outcomes.iter().any(|o| o.fatal) {
        3
    } else if outcomes.iter().all(SuiteOutcome::passed) {
        0
    } else {
        2
    }
}

fn rng_for(seed: u64, criterion: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(criterion) << 40))
}

fn comodule(c: &Arc<Coalgebra>, rng: &mut ChaCha8Rng, max_target: usize) -> Arc<Comodule> {
    let target = rng.gen_range(1..=max_target);
    random_comodule(c, target, rng.gen())
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    let data = (0..rows * cols)
        .map(|_| Rational::from(rng.gen_range(-2i64..=2)))
        .collect();
    RationalMatrix::from_vec(rows, cols, data).expect("sized")
}

/// Checks shared by every limit run: the fixed-point trace, maximality
/// witnesses and the dual-module oracle.
pub struct Observers {
    fixed_point: SuiteOutcome,
    maximality: SuiteOutcome,
    dual: SuiteOutcome,
    witness_seed: u64,
}

impl Observers {
    pub fn new(seed: u64) -> Self {
        Observers {
            fixed_point: SuiteOutcome::new(6, "fixed-point trace"),
            maximality: SuiteOutcome::new(7, "maximality witnesses"),
            dual: SuiteOutcome::new(11, "dual-module oracle"),
            witness_seed: seed,
        }
    }

    fn cone(&mut self, tag: &str, r: &ConeResult) {
        let fp = &mut self.fixed_point;
        fp.cases += 1;
        let bound = r.cofree.comodule.dim + 1;
        fp.check(r.trace.windows(2).all(|p| p[0] > p[1]), || {
            format!("{tag}: trace {:?} not strictly decreasing", r.trace)
        });
        fp.check(r.trace.len() <= bound && r.iterations <= bound, || {
            format!("{tag}: trace {:?} longer than {bound}", r.trace)
        });
        fp.check(
            r.trace.first() == Some(&r.w.dim()) && r.trace.last() == Some(&r.d.dim()),
            || format!("{tag}: trace {:?} does not run from W to D", r.trace),
        );
        fp.check(restrict_coaction(&r.cofree.comodule, &r.d).is_ok(), || {
            format!("{tag}: D is not coinvariant")
        });
        if r.w.dim() != r.d.dim() {
            self.maximality.cases += 1;
            self.witness_seed = self.witness_seed.wrapping_add(1);
            match maximality_witnesses(r, 20, self.witness_seed) {
                Ok(m) => self.maximality.check(m.holds(), || {
                    format!(
                        "{tag}: {} of {} witnesses stayed in W",
                        m.checked - m.escaped,
                        m.checked
                    )
                }),
                Err(e) => self.maximality.error(tag, e),
            }
        }
        self.legs(tag, &r.apex, &r.legs);
    }

    fn cocone(&mut self, tag: &str, r: &CoconeResult) {
        self.legs(tag, &r.apex, &r.legs);
    }

    fn legs(&mut self, tag: &str, apex: &Comodule, legs: &[ComodMorphism]) {
        self.dual.cases += 1;
        self.dual.check(to_dual_module(apex).validate().is_valid(), || {
            format!("{tag}: apex fails module axioms")
        });
        self.dual.check(legs.iter().all(is_dual_homomorphism), || {
            format!("{tag}: a leg is not a module homomorphism")
        });
    }
}

fn timed(f: impl FnOnce() -> SuiteOutcome) -> SuiteOutcome {
    let start = Instant::now();
    let mut o = f();
    o.elapsed = start.elapsed();
    o
}

pub fn axioms(seed: u64) -> SuiteOutcome {
    let mut rng = rng_for(seed, 1);
    let mut o = SuiteOutcome::new(1, "axiom suites");
    for c in standard_corpus() {
        o.cases += 1;
        o.check(validate_coalgebra(&c).is_valid(), || {
            format!("{} fails coalgebra axioms", c.name)
        });
        for i in 0..25 {
            o.cases += 1;
            let v = comodule(&c, &mut rng, 3);
            o.check(v.dim <= 8, || format!("{} #{i}: dimension {} above 8", c.name, v.dim));
            o.check(validate_comodule(&v).is_valid(), || {
                format!("{} #{i}: invalid comodule", c.name)
            });
        }
    }
    o
}

pub fn cofree_property(seed: u64) -> SuiteOutcome {
    let mut rng = rng_for(seed, 2);
    let mut o = SuiteOutcome::new(2, "cofree universal property");
    for c in standard_corpus() {
        for i in 0..100 {
            o.cases += 1;
            let v = comodule(&c, &mut rng, 3);
            let x = rng.gen_range(1..=2);
            let f = random_matrix(&mut rng, x, v.dim);
            let cf = cofree(&c, x);
            let tag = format!("{} #{i}", c.name);
            let Some(lift) = o.ok(&tag, cofree_factorize(&v, &f, &cf)) else {
                continue;
            };
            o.check(cf.p.mul(&lift.morphism.mat).is_ok_and(|m| m == f), || {
                format!("{tag}: p·f' ≠ f")
            });
            o.check(lift.uniqueness_kernel_dim == 0, || {
                format!("{tag}: uniqueness kernel dim {}", lift.uniqueness_kernel_dim)
            });
            o.check(validate_morphism(&lift.morphism).is_valid(), || {
                format!("{tag}: f' not a comodule map")
            });
        }
    }
    o
}

pub fn finite_products(seed: u64, obs: &mut Observers) -> SuiteOutcome {
    let mut rng = rng_for(seed, 3);
    let mut o = SuiteOutcome::new(3, "finite product = direct sum");
    for c in standard_corpus() {
        let max_target = if c.dim >= 4 { 2 } else { 3 };
        for i in 0..20 {
            o.cases += 1;
            let k = rng.gen_range(2..=3);
            let vs: Vec<_> = (0..k).map(|_| comodule(&c, &mut rng, max_target)).collect();
            let tag = format!("{} #{i}", c.name);
            o.check(vs.iter().all(|v| v.dim <= 6), || {
                format!("{tag}: a factor exceeds dimension 6")
            });
            let Some(cmp) = o.ok(&tag, product_comparison(&c, &vs)) else {
                continue;
            };
            let total: usize = vs.iter().map(|v| v.dim).sum();
            o.check(cmp.limit.apex.dim == total, || {
                format!("{tag}: apex dim {} ≠ {total}", cmp.limit.apex.dim)
            });
            o.check(cmp.inverse, || format!("{tag}: comparison maps are not inverse"));
            o.check(cmp.limit.certificate.passed(), || {
                format!("{tag}: {}", cmp.limit.certificate)
            });
            obs.cone(&tag, &cmp.limit);
        }
    }
    o
}

pub fn equalizers(seed: u64, obs: &mut Observers) -> SuiteOutcome {
    let mut rng = rng_for(seed, 4);
    let mut o = SuiteOutcome::new(4, "equalizer cross-oracle");
    let corpus = standard_corpus();
    for i in 0..30 {
        o.cases += 1;
        let c = &corpus[i % corpus.len()];
        let (a, b) = (comodule(c, &mut rng, 3), comodule(c, &mut rng, 3));
        let tag = format!("{} #{i}", c.name);
        let Some((f, g)) = o.ok(
            &tag,
            random_morphism(&a, &b, &mut rng).and_then(|f| Ok((f, random_morphism(&a, &b, &mut rng)?))),
        ) else {
            continue;
        };
        let Some(eq) = o.ok(&tag, equalizer(&f, &g)) else {
            continue;
        };
        o.check(eq.routes_agree, || format!("{tag}: limit and kernel routes differ"));
        o.check(eq.cone.certificate.passed(), || {
            format!("{tag}: {}", eq.cone.certificate)
        });
        obs.cone(&tag, &eq.cone);
    }
    o
}

/// A small random diagram: a discrete pair, a parallel pair or a cospan.
fn random_diagram(c: &Arc<Coalgebra>, rng: &mut ChaCha8Rng, shape: usize) -> Result<Diagram> {
    let a = comodule(c, rng, 2);
    let b = comodule(c, rng, 2);
    match shape % 3 {
        0 => Diagram::discrete(c, &[a, b]),
        1 => Diagram::parallel_pair(&random_morphism(&a, &b, rng)?, &random_morphism(&a, &b, rng)?),
        _ => {
            let t = comodule(c, rng, 2);
            Diagram::cospan(&random_morphism(&a, &t, rng)?, &random_morphism(&b, &t, rng)?)
        }
    }
}

pub fn limit_property(seed: u64, obs: &mut Observers) -> SuiteOutcome {
    let mut rng = rng_for(seed, 5);
    let mut o = SuiteOutcome::new(5, "limit universal property");
    for c in standard_corpus() {
        for i in 0..50 {
            o.cases += 1;
            let tag = format!("{} #{i}", c.name);
            let Some(d) = o.ok(&tag, random_diagram(&c, &mut rng, i)) else {
                continue;
            };
            let Some(lim) = o.ok(&tag, comodule_limit(&d)) else {
                continue;
            };
            o.check(lim.certificate.passed(), || format!("{tag}: {}", lim.certificate));
            obs.cone(&tag, &lim);
            let u = comodule(&c, &mut rng, 2);
            let Some(h) = o.ok(&tag, random_morphism(&u, &lim.apex, &mut rng)) else {
                continue;
            };
            let Some(legs) = o.ok(&tag, lim.legs.iter().map(|l| l.compose(&h)).collect::<Result<Vec<_>>>()) else {
                continue;
            };
            let Some(m) = o.ok(&tag, mediating_morphism(&u, &legs, &lim)) else {
                continue;
            };
            o.check(m.map.mat == h.mat, || {
                format!("{tag}: mediating map differs from the chosen map")
            });
            o.check(m.uniqueness_kernel_dim == 0, || {
                format!("{tag}: uniqueness kernel dim {}", m.uniqueness_kernel_dim)
            });
        }
    }
    o
}

/// The divided-power hand example: the largest coinvariant subspace of
/// `span(c₁)` in `C ⊗ K` is zero, reached in one step.
pub fn fixed_point_hand_example(o: &mut SuiteOutcome) {
    o.cases += 1;
    let dp = divided_power_coalgebra(2).expect("corpus member");
    let w = Subspace::from_vectors(2, &[vec![Rational::from(0), Rational::from(1)]]).expect("vector of length 2");
    match maximal_coinvariant_in(&dp, 1, &w) {
        Ok(fp) => {
            o.check(fp.space.is_zero(), || "hand example: fixed point is not zero".into());
            o.check(fp.trace == [1, 0], || {
                format!("hand example: trace {:?} ≠ [1, 0]", fp.trace)
            });
        }
        Err(e) => o.error("hand example", e),
    }
}

pub fn coimages(seed: u64) -> SuiteOutcome {
    let mut rng = rng_for(seed, 8);
    let mut o = SuiteOutcome::new(8, "coimage factorization");
    let corpus = standard_corpus();
    for i in 0..30 {
        o.cases += 1;
        let c = &corpus[i % corpus.len()];
        let tag = format!("{} #{i}", c.name);
        let (a, b) = (comodule(c, &mut rng, 3), comodule(c, &mut rng, 3));
        let Some(f) = o.ok(&tag, random_morphism(&a, &b, &mut rng)) else {
            continue;
        };
        let Some(fac) = o.ok(&tag, coimage_factorization(&f)) else {
            continue;
        };
        let mid = fac.middle().dim;
        o.check(fac.k.mat.mul(&fac.coim.mat).is_ok_and(|m| m == f.mat), || {
            format!("{tag}: k∘coim ≠ f")
        });
        o.check(rank(&fac.coim.mat) == mid, || {
            format!("{tag}: coim lacks full row rank")
        });
        o.check(rank(&fac.k.mat) == mid, || format!("{tag}: k lacks full column rank"));
        o.check(
            validate_morphism(&fac.coim).is_valid() && validate_morphism(&fac.k).is_valid(),
            || format!("{tag}: a factor is not a comodule map"),
        );
    }
    o
}

fn random_sub(amb: &Arc<Comodule>, rng: &mut ChaCha8Rng) -> Result<Subcomodule> {
    let k = rng.gen_range(1..=2);
    let seeds: Vec<_> = (0..k).map(|_| random_vector(rng, amb.dim)).collect();
    generated_subcomodule(amb, &seeds)
}

pub fn subobject_lattice(seed: u64) -> SuiteOutcome {
    let mut rng = rng_for(seed, 9);
    let mut o = SuiteOutcome::new(9, "subobject lattice");
    let corpus = standard_corpus();
    for i in 0..30 {
        o.cases += 1;
        let c = &corpus[i % corpus.len()];
        let tag = format!("{} #{i}", c.name);
        let amb = cofree(c, rng.gen_range(1..=2)).comodule;
        let laws = (|| -> Result<Vec<(&'static str, bool)>> {
            let a = random_sub(&amb, &mut rng)?;
            let b = random_sub(&amb, &mut rng)?;
            let t = random_sub(&amb, &mut rng)?;
            let meet = |x: &Subcomodule, y: &Subcomodule| pullback_monos(x, y);
            let join = |x: &Subcomodule, y: &Subcomodule| subobject_join(x, y);
            let ab = meet(&a, &b)?;
            let jab = join(&a, &b)?;
            Ok(vec![
                ("meet commutes", ab.space == meet(&b, &a)?.space),
                ("join commutes", jab.space == join(&b, &a)?.space),
                (
                    "meet associates",
                    meet(&ab, &t)?.space == meet(&a, &meet(&b, &t)?)?.space,
                ),
                (
                    "join associates",
                    join(&jab, &t)?.space == join(&a, &join(&b, &t)?)?.space,
                ),
                ("join absorbs meet", join(&a, &ab)?.space == a.space),
                ("meet absorbs join", meet(&a, &jab)?.space == a.space),
                (
                    "meet and join coinvariant",
                    validate_comodule(&ab.restricted).is_valid() && validate_comodule(&jab.restricted).is_valid(),
                ),
            ])
        })();
        if let Some(laws) = o.ok(&tag, laws) {
            for (law, ok) in laws {
                o.check(ok, || format!("{tag}: {law} fails"));
            }
        }
    }
    o
}

pub fn colimits(seed: u64, obs: &mut Observers) -> SuiteOutcome {
    let mut rng = rng_for(seed, 10);
    let mut o = SuiteOutcome::new(10, "colimit suite");
    let corpus = standard_corpus();
    for i in 0..30 {
        o.cases += 1;
        let c = &corpus[i % corpus.len()];
        let tag = format!("{} #{i}", c.name);
        let r = (|| -> Result<CoconeResult> {
            let a = comodule(c, &mut rng, 3);
            let b = comodule(c, &mut rng, 3);
            match i % 3 {
                0 => coproduct(c, &[a, b]),
                1 => coequalizer(&random_morphism(&a, &b, &mut rng)?, &random_morphism(&a, &b, &mut rng)?),
                _ => {
                    let t = comodule(c, &mut rng, 3);
                    pushout(&random_morphism(&a, &b, &mut rng)?, &random_morphism(&a, &t, &mut rng)?)
                }
            }
        })();
        let Some(r) = o.ok(&tag, r) else {
            continue;
        };
        o.check(r.certificate.passed(), || format!("{tag}: {}", r.certificate));
        o.check(r.uniqueness_kernel_dim == 0, || {
            format!("{tag}: uniqueness kernel dim {}", r.uniqueness_kernel_dim)
        });
        o.check(validate_comodule(&r.apex).is_valid(), || {
            format!("{tag}: apex fails axioms")
        });
        obs.cocone(&tag, &r);
    }
    o
}

/// Fixed points of random subspaces `W` of cofree comodules. Limit runs always
/// produce a coinvariant `W`, so this is where the descent and the maximality
/// witnesses are exercised.
pub fn random_fixed_points(seed: u64, fixed_point: &mut SuiteOutcome, maximality: &mut SuiteOutcome) {
    let mut rng = rng_for(seed, 7);
    let corpus = standard_corpus();
    for i in 0..30 {
        let c = &corpus[i % corpus.len()];
        let tag = format!("{} subspace #{i}", c.name);
        let amb = cofree(c, rng.gen_range(1..=2)).comodule;
        let k = rng.gen_range(1..=amb.dim);
        let vectors: Vec<_> = (0..k).map(|_| random_vector(&mut rng, amb.dim)).collect();
        let Some(w) = fixed_point.ok(&tag, Subspace::from_vectors(amb.dim, &vectors)) else {
            continue;
        };
        fixed_point.cases += 1;
        let Some(fp) = fixed_point.ok(&tag, maximal_coinvariant(&amb, &w)) else {
            continue;
        };
        fixed_point.check(fp.trace.windows(2).all(|p| p[0] > p[1]), || {
            format!("{tag}: trace {:?} not strictly decreasing", fp.trace)
        });
        fixed_point.check(fp.trace.len() <= amb.dim + 1, || {
            format!("{tag}: trace {:?} too long", fp.trace)
        });
        fixed_point.check(
            fp.trace.first() == Some(&w.dim()) && fp.trace.last() == Some(&fp.space.dim()),
            || format!("{tag}: trace {:?} does not run from W to D", fp.trace),
        );
        fixed_point.check(restrict_coaction(&amb, &fp.space).is_ok(), || {
            format!("{tag}: D is not coinvariant")
        });
        if fp.space.dim() == w.dim() {
            continue;
        }
        maximality.cases += 1;
        let mut escaped = 0;
        let mut checked = 0;
        while checked < 20 {
            let v = random_vector_in(&w, &mut rng);
            if fp.space.contains_vector(&v).unwrap_or(true) {
                continue;
            }
            checked += 1;
            match generated_subcomodule(&amb, &[v]).and_then(|g| w.contains(&g.space)) {
                Ok(inside) => escaped += usize::from(!inside),
                Err(e) => {
                    maximality.error(&tag, e);
                    break;
                }
            }
        }
        maximality.check(escaped == checked, || {
            format!("{tag}: {} witnesses stayed in W", checked - escaped)
        });
    }
}

/// Runs criteria 1–11 in order.
pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    let mut obs = Observers::new(seed);
    let mut out = vec![timed(|| axioms(seed)), timed(|| cofree_property(seed))];
    let start = Instant::now();
    out.push(timed(|| finite_products(seed, &mut obs)));
    out.push(timed(|| equalizers(seed, &mut obs)));
    out.push(timed(|| limit_property(seed, &mut obs)));
    let cones_elapsed = start.elapsed();
    let colimit_suite = timed(|| colimits(seed, &mut obs));
    let Observers {
        mut fixed_point,
        mut maximality,
        mut dual,
        ..
    } = obs;
    fixed_point_hand_example(&mut fixed_point);
    let start = Instant::now();
    random_fixed_points(seed, &mut fixed_point, &mut maximality);
    fixed_point.elapsed = cones_elapsed + start.elapsed();
    maximality.elapsed = cones_elapsed + start.elapsed();
    dual.elapsed = cones_elapsed + colimit_suite.elapsed;
    out.push(fixed_point);
    out.push(maximality);
    out.push(timed(|| coimages(seed)));
    out.push(timed(|| subobject_lattice(seed)));
    out.push(colimit_suite);
    out.push(dual);
    out
}
