//! Dispatch of a validated scenario to the kernels.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use weilkit::forms::{
    check_adjoint, check_balanced, is_nondegenerate, lift_trace_form, similitude_factor, split_form, ActionModule,
    Level,
};
use weilkit::ptower::poly;
use weilkit::random::{random_elem, random_invertible, rng};
use weilkit::surject::{
    commutator_image_check, crt_product_check, lifting_check, random_lift, random_lift_trials, reduction_kernel,
};
use weilkit::sympgrp::{
    closure, gsp_decomposition_check, type_ii_split, SymplecticGroupSpec, TypeIIModel, DEFAULT_CAP,
};
use weilkit::weilres::RestrictionData;
use weilkit::{EtaleAlgebra, GaloisRing, Matrix, QuotientRing};

use crate::report::{to_value, Check, Report};
use crate::scenario::{build_matrix, InputError, Kind, Scenario};
use crate::suite::{run_suite_with, SuiteOptions};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_SAMPLES: usize = 1000;

/// Command-line overrides of the scenario's own seed and cap.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub cap: Option<usize>,
}

/// Values a kind exposes to `[expect]`.
type Observed = BTreeMap<&'static str, Value>;

struct Ctx {
    seed: u64,
    cap: usize,
    checks: Vec<Check>,
    observed: Observed,
    flags: Vec<String>,
}

impl Ctx {
    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn observe(&mut self, key: &'static str, v: impl serde::Serialize) {
        self.observed.insert(key, to_value(v));
    }
}

pub fn run_scenario(s: &Scenario, opts: RunOptions) -> Result<Report, InputError> {
    s.validate()?;
    let seed = opts.seed.or(s.seed).unwrap_or(DEFAULT_SEED);
    let cap = opts.cap.or(s.cap).unwrap_or(DEFAULT_CAP);
    if s.kind == Kind::Suite {
        return Ok(run_suite_with(&SuiteOptions { seed, mutation: None }));
    }
    let mut ctx = Ctx {
        seed,
        cap,
        checks: Vec::new(),
        observed: Observed::new(),
        flags: Vec::new(),
    };
    match s.kind {
        Kind::Tower => tower(s, &mut ctx)?,
        Kind::Weil => weil(s, &mut ctx)?,
        Kind::Forms => forms(s, &mut ctx)?,
        Kind::Split2 => split2(s, &mut ctx)?,
        Kind::Groups => groups(s, &mut ctx)?,
        Kind::Surject => surject(s, &mut ctx)?,
        Kind::Suite => unreachable!(),
    }
    expectations(s, &mut ctx);
    let mut echo = s.clone();
    echo.seed = Some(seed);
    echo.cap = Some(cap);
    Ok(Report::new(
        s.kind.name(),
        seed,
        cap,
        to_value(&echo),
        ctx.flags,
        ctx.checks,
    ))
}

fn expectations(s: &Scenario, ctx: &mut Ctx) {
    let Some(expect) = &s.expect else { return };
    let Value::Object(wanted) = to_value(expect) else {
        return;
    };
    for (key, want) in wanted {
        let name = format!("expect_{key}");
        let check = match ctx.observed.get(key.as_str()) {
            Some(got) => Check::new(
                &name,
                "scenario expectation",
                *got == want,
                json!({"expected": want, "observed": got}),
            ),
            None => Check::failed(
                &name,
                "scenario expectation",
                format!("`{key}` is not observed by `{}` scenarios", s.kind.name()),
            ),
        };
        ctx.push(check);
    }
}

fn tower(s: &Scenario, ctx: &mut Ctx) -> Result<(), InputError> {
    let m = s.modulus()?;
    let g = s.require_poly()?;
    let ring = QuotientRing::new(m, &poly::from_i64(&m, g))?;
    ctx.observe("components", 1);
    if ring.is_local() {
        let gr = GaloisRing::from_ring(ring.clone())?;
        let n = gr.degree();
        let x = ring.gen();
        ctx.push(Check::new(
            "galois_ring",
            "Galois ring of an irreducible polynomial",
            true,
            json!({"ring": gr.to_string(), "size": ring.size().to_string(), "degree": n}),
        ));
        let mut gen = rng(ctx.seed);
        let samples: Vec<_> = (0..32)
            .map(|_| (random_elem(&ring, &mut gen), random_elem(&ring, &mut gen)))
            .collect();
        let residue = ring.residue_ring();
        let order_n = gr.frobenius_pow(&x, n) == x && (1..n).all(|k| gr.frobenius_pow(&x, k) != x);
        let multiplicative = samples.iter().all(|(a, b)| {
            gr.frobenius(&ring.mul(a, b)) == ring.mul(&gr.frobenius(a), &gr.frobenius(b))
                && ring.reduce_into(&residue, &gr.frobenius(a))
                    == residue.pow(&ring.reduce_into(&residue, a), m.l() as u128)
        });
        ctx.push(Check::new(
            "frobenius",
            "Frobenius automorphism lifting x -> x^l",
            order_n && multiplicative,
            json!({"frobenius_of_x": ring.format(&gr.frobenius(&x)), "order": n, "order_is_degree": order_n, "multiplicative_and_lifts": multiplicative}),
        ));
        ctx.push(Check::run("dual_basis", "trace-dual basis of a Galois ring", || {
            let basis = match &s.basis {
                Some(b) => b.iter().map(|c| ring.from_coeffs(c)).collect(),
                None => gr.power_basis(),
            };
            let ext = gr.dual_basis(&basis)?;
            let traces: Vec<Vec<u64>> = ext
                .basis
                .iter()
                .map(|a| ext.dual.iter().map(|b| gr.trace(&ring.mul(a, b))).collect())
                .collect();
            let dual: Vec<String> = ext.dual.iter().map(|b| ring.format(b)).collect();
            Ok((ext.is_exact(&gr), json!({"dual": dual, "trace_table": traces})))
        }));
        let trace_norm = samples.iter().all(|(a, b)| {
            gr.trace(&ring.add(a, b)) == m.add(gr.trace(a), gr.trace(b))
                && gr.norm(&ring.mul(a, b)) == m.mul(gr.norm(a), gr.norm(b))
                && gr.trace(a) == ring.regular_trace(a)
        });
        ctx.push(Check::new(
            "trace_and_norm",
            "trace is additive, norm is multiplicative, both land in the base",
            trace_norm,
            json!({"samples": samples.len()}),
        ));
    } else {
        let alg = match EtaleAlgebra::split(m, g) {
            Ok(a) => a,
            Err(e) => {
                ctx.push(Check::failed(
                    "etale_split",
                    "idempotent splitting of an unramified etale algebra",
                    e,
                ));
                return Ok(());
            }
        };
        let factors: Vec<String> = alg.factors().iter().map(|f| poly::display(f)).collect();
        ctx.observe("components", alg.num_components());
        ctx.push(Check::new(
            "etale_split",
            "idempotent splitting of an unramified etale algebra",
            alg.idempotents_valid(),
            json!({"factors": factors, "idempotents": alg.idempotents().iter().map(|e| ring.format(e)).collect::<Vec<_>>()}),
        ));
        let mut gen = rng(ctx.seed);
        let a = alg.ring();
        let ok = (0..32).all(|_| {
            let v = random_elem(a, &mut gen);
            alg.trace(&v) == alg.trace_by_components(&v) && alg.reconstruct(&alg.project_all(&v)) == v
        });
        ctx.push(Check::new(
            "trace_by_components",
            "trace of the algebra is the sum of component traces",
            ok,
            json!({"samples": 32}),
        ));
        ctx.push(Check::run("dual_basis", "trace-dual basis of an etale algebra", || {
            let dual = alg.dual_power_basis()?;
            Ok((true, dual.iter().map(|d| a.format(d)).collect::<Vec<_>>()))
        }));
    }
    Ok(())
}

fn weil(s: &Scenario, ctx: &mut Ctx) -> Result<(), InputError> {
    let m = s.modulus()?;
    let gr = match GaloisRing::new(m, s.require_poly()?) {
        Ok(g) => g,
        Err(e) => {
            ctx.push(Check::failed(
                "restriction_blocks",
                "block matrices of the restriction embedding",
                e,
            ));
            return Ok(());
        }
    };
    let ring = gr.ring().clone();
    let r = s.r.or(s.matrix.as_ref().map(Vec::len)).unwrap_or(1);
    let basis = match &s.basis {
        Some(b) => b.iter().map(|c| ring.from_coeffs(c)).collect(),
        None => gr.power_basis(),
    };
    let rd = match RestrictionData::build(&gr, &basis, r) {
        Ok(rd) => rd,
        Err(e) => {
            ctx.push(Check::failed(
                "restriction_blocks",
                "block matrices of the restriction embedding",
                e,
            ));
            return Ok(());
        }
    };
    let inverse = (rd.a() * rd.b()).is_identity() && (rd.b() * rd.a()).is_identity();
    ctx.push(Check::new(
        "restriction_blocks",
        "block matrices of the restriction embedding",
        inverse,
        json!({"a": rd.a(), "b": rd.b(), "mutually_inverse": inverse}),
    ));
    let mut gen = rng(ctx.seed);
    let x = match &s.matrix {
        Some(spec) => build_matrix(&ring, spec)?,
        None => random_invertible(&ring, r, &mut gen),
    };
    if x.rows() != r || x.cols() != r {
        return Err(InputError::Invalid(format!("`matrix` must be {r}x{r}")));
    }
    let y = random_invertible(&ring, r, &mut gen);
    ctx.push(Check::run(
        "restricted_matrix",
        "restriction is defined over the base ring",
        || {
            let in_ext = rd.restrict_in_extension(&x)?;
            let rational = in_ext.entries().iter().all(|e| ring.is_scalar(e));
            let phi = rd.restrict_matrix(&x)?;
            Ok((rational, json!({"phi": phi, "entries_in_base": rational})))
        },
    ));
    ctx.push(Check::run(
        "homomorphism",
        "restriction is a group homomorphism",
        || {
            let (px, py) = (rd.restrict_matrix(&x)?, rd.restrict_matrix(&y)?);
            let product = rd.restrict_matrix(&(&x * &y))? == &px * &py;
            let inverse = rd.restrict_matrix(&x.inverse()?)? == px.inverse()?;
            Ok((product && inverse, json!({"products": product, "inverses": inverse})))
        },
    ));
    ctx.push(Check::run(
        "determinant_is_norm",
        "determinant of the restriction is the norm of the determinant",
        || {
            let det = rd.restrict_matrix(&x)?.det()?.coeffs()[0];
            let norm = gr.norm(&x.det()?);
            Ok((det == norm, json!({"det": det, "norm": norm})))
        },
    ));
    ctx.push(Check::run(
        "round_trip",
        "restriction is injective with explicit inverse",
        || {
            let back = rd.unrestrict_matrix(&rd.restrict_matrix(&x)?)?;
            Ok((back == x, json!({"recovered": back})))
        },
    ));
    Ok(())
}

fn forms(s: &Scenario, ctx: &mut Ctx) -> Result<(), InputError> {
    let m = s.modulus()?;
    let alg = match EtaleAlgebra::split(m, s.require_poly()?) {
        Ok(a) => a,
        Err(e) => {
            ctx.push(Check::failed("balanced", "balanced forms for an etale action", e));
            return Ok(());
        }
    };
    let base = alg.base().clone();
    let psi = build_matrix(&base, s.gram.as_ref().expect("validated"))?;
    let module = match &s.action {
        Some(a) => ActionModule::etale(&alg, build_matrix(&base, a)?),
        None => {
            let k = s.free_rank.unwrap_or(psi.rows() / alg.degree());
            if k * alg.degree() != psi.rows() {
                return Err(InputError::Invalid(format!("`gram` must be {0}x{0}", k * alg.degree())));
            }
            Ok(ActionModule::free_etale(&alg, k))
        }
    };
    let module = match module {
        Ok(mo) => mo,
        Err(e) => {
            ctx.push(Check::failed("balanced", "balanced forms for an etale action", e));
            return Ok(());
        }
    };
    if psi.rows() != module.rank() || psi.cols() != module.rank() {
        return Err(InputError::Invalid(format!("`gram` must be {0}x{0}", module.rank())));
    }
    let balanced = check_balanced(&module, &psi);
    ctx.observe("balanced", balanced);
    ctx.push(Check::new(
        "balanced",
        "balanced forms for an etale action",
        balanced,
        json!({"balanced": balanced}),
    ));
    let phi = match lift_trace_form(&module, &psi) {
        Ok(phi) => phi,
        Err(e) => {
            ctx.push(Check::failed(
                "trace_lift",
                "unique algebra-valued lift of a balanced form",
                e,
            ));
            return Ok(());
        }
    };
    let n = psi.rows();
    let exact = (0..n).all(|p| (0..n).all(|q| alg.trace(&phi.get(p, q)) == psi.entry(p, q)[0]));
    ctx.push(Check::new(
        "trace_lift",
        "unique algebra-valued lift of a balanced form",
        exact,
        json!({"phi": phi, "trace_recovers_psi": exact}),
    ));
    let comps = match split_form(&module, &phi) {
        Ok(c) => c,
        Err(e) => {
            ctx.push(Check::failed("components", "splitting along the idempotents", e));
            return Ok(());
        }
    };
    ctx.observe("components", comps.len());
    let data: Vec<Value> = comps
        .iter()
        .map(|c| json!({"rank": c.rank(), "gram": c.gram}))
        .collect();
    ctx.push(Check::new(
        "components",
        "splitting along the idempotents",
        comps.len() == alg.num_components(),
        data,
    ));
    let psi_alt = psi.is_alternating();
    let phi_alt = phi.is_alternating();
    let comps_alt = comps.iter().all(|c| c.gram.is_alternating());
    ctx.push(Check::new(
        "alternating",
        "alternating forms have alternating lifts and components",
        !psi_alt || (phi_alt && comps_alt),
        json!({"psi": psi_alt, "phi": phi_alt, "components": comps_alt}),
    ));
    let whole = is_nondegenerate(&psi, Level::Residue);
    let parts = comps.iter().all(|c| is_nondegenerate(&c.gram, Level::Residue));
    ctx.observe("nondegenerate", whole);
    ctx.push(Check::new(
        "nondegeneracy",
        "nondegenerate exactly when every component is",
        whole == parts,
        json!({
            "psi_mod_l": whole,
            "psi_perfect": is_nondegenerate(&psi, Level::Full),
            "components_mod_l": comps.iter().map(|c| is_nondegenerate(&c.gram, Level::Residue)).collect::<Vec<_>>(),
        }),
    ));
    let adjoint = check_adjoint(&module, &psi);
    ctx.push(Check::new(
        "adjoint",
        "action is self-adjoint for a commutative algebra",
        adjoint == balanced,
        json!({"adjoint": adjoint}),
    ));
    if let Some(spec) = &s.similitude {
        let g = build_matrix(&base, spec)?;
        ctx.push(Check::run("similitude", "similitude factor of a matrix", || {
            let mu = similitude_factor(&g, &psi)?;
            Ok((true, json!({"mu": base.format(&mu)})))
        }));
    }
    Ok(())
}

fn split2(s: &Scenario, ctx: &mut Ctx) -> Result<(), InputError> {
    let ring = s.integers()?;
    let h = s.h.unwrap_or(1);
    let mut model = TypeIIModel::standard(&ring, h);
    if let (Some(t), Some(u)) = (&s.t, &s.u) {
        model.t = build_matrix(&ring, t)?;
        model.u = build_matrix(&ring, u)?;
        model.t_adj = model.t.clone();
        model.u_adj = model.u.clone();
    }
    if let Some(f) = &s.form {
        model.form = build_matrix(&ring, f)?;
    }
    let anchor = "idempotent splitting of a quaternion action";
    let split = match type_ii_split(&model) {
        Ok(x) => x,
        Err(e) => {
            ctx.push(Check::failed("type_ii_split", anchor, e));
            return Ok(());
        }
    };
    let n = model.t.rows();
    let anticommute = (&(&model.t * &model.u) + &(&model.u * &model.t)).is_zero();
    ctx.push(Check::new(
        "relations",
        anchor,
        anticommute && split.e_idempotent && split.f_idempotent && split.ueu_complement,
        json!({"tu_plus_ut_zero": anticommute, "e_idempotent": split.e_idempotent, "f_idempotent": split.f_idempotent, "ueu_complement": split.ueu_complement, "e": split.e}),
    ));
    ctx.push(Check::new(
        "ranks",
        anchor,
        split.rank_x == n / 2 && split.rank_y == n / 2,
        json!({"rank_x": split.rank_x, "rank_y": split.rank_y}),
    ));
    ctx.push(Check::new(
        "u_isomorphism",
        "u carries X onto Y",
        split.u_maps_x_onto_y,
        json!({"u_maps_x_onto_y": split.u_maps_x_onto_y}),
    ));
    ctx.push(Check::new(
        "restricted_form",
        "restricted form on W is symplectic",
        split.w_alternating && split.w_nondegenerate,
        json!({"gram": split.w_gram, "alternating": split.w_alternating, "nondegenerate": split.w_nondegenerate, "nondegenerate_mod_l": split.w_nondegenerate_mod_l}),
    ));
    ctx.push(Check::new(
        "adjoint",
        "form is compatible with the involution",
        split.adjoint_compatible,
        json!({"adjoint_compatible": split.adjoint_compatible}),
    ));
    Ok(())
}

fn group_ring(s: &Scenario) -> Result<std::sync::Arc<QuotientRing>, InputError> {
    match &s.poly {
        Some(p) => {
            let m = s.modulus()?;
            Ok(QuotientRing::new(m, &poly::from_i64(&m, p))?)
        }
        None => s.integers(),
    }
}

fn generators(s: &Scenario, spec: &SymplecticGroupSpec) -> Result<Option<Vec<Matrix>>, InputError> {
    let Some(gens) = &s.generators else { return Ok(None) };
    let out = gens
        .iter()
        .map(|g| build_matrix(spec.ring(), g))
        .collect::<weilkit::Result<Vec<_>>>()?;
    if out.iter().any(|g| g.rows() != spec.size() || g.cols() != spec.size()) {
        return Err(InputError::Invalid(format!("generators must be {0}x{0}", spec.size())));
    }
    Ok(Some(out))
}

fn small_prime_flag(l: u64, flags: &mut Vec<String>) {
    if l < 5 {
        flags.push(format!(
            "l = {l} < 5: lifting and perfectness statements are observed, not claimed"
        ));
    }
}

fn groups(s: &Scenario, ctx: &mut Ctx) -> Result<(), InputError> {
    let ring = group_ring(s)?;
    let h = s.h.unwrap_or(1);
    if h.is_multiple_of(2) {
        ctx.flags.push(format!("h = {h} is even; odd h is not enforced"));
    }
    small_prime_flag(ring.modulus().l(), &mut ctx.flags);
    let spec = SymplecticGroupSpec::new(ring.clone(), h)?;
    let custom = generators(s, &spec)?;
    let cap = ctx.cap;
    let gens = custom.clone().unwrap_or_else(|| spec.standard_generators());
    let mut observed_order = None;
    ctx.push(Check::run("order", "order of the symplectic group", || {
        let c = closure(&spec, &gens, cap)?;
        let formula = spec.group_order()?;
        let order = c.order() as u128;
        observed_order = (!c.cap_exceeded()).then_some(c.order() as u64);
        let ok = !c.cap_exceeded() && if custom.is_some() { formula % order == 0 } else { order == formula };
        Ok((ok, json!({"order": c.order(), "formula": formula.to_string(), "cap_exceeded": c.cap_exceeded(), "standard_generators": custom.is_none()})))
    }));
    if let Some(o) = observed_order {
        ctx.observe("order", o);
    }
    let mut decomposition = None;
    ctx.push(Check::run(
        "similitude_index",
        "index of scalars times Sp in GSp",
        || {
            let d = gsp_decomposition_check(&spec, cap)?;
            let ok = d.generated_by_sp_and_diagonals && d.index == d.index_by_squares;
            decomposition = Some((d.index, d.gsp_order));
            Ok((ok, d))
        },
    ));
    if let Some((index, gsp)) = decomposition {
        ctx.observe("index", index);
        ctx.observe("gsp_order", gsp);
    }
    let mut commutator = None;
    ctx.push(Check::run(
        "commutator_subgroup",
        "derived subgroup of GSp lies in Sp",
        || {
            let r = commutator_image_check(&spec, &spec.similitude_generators(), cap)?;
            commutator = Some(r.commutator_order);
            Ok((r.contained_in_sp && (r.small_prime || r.equals_sp), r))
        },
    ));
    if let Some(c) = commutator {
        ctx.observe("commutator_order", c);
    }
    Ok(())
}

fn surject(s: &Scenario, ctx: &mut Ctx) -> Result<(), InputError> {
    let ring = s.integers()?;
    let m = *ring.modulus();
    let h = s.h.unwrap_or(1);
    small_prime_flag(m.l(), &mut ctx.flags);
    let spec = SymplecticGroupSpec::new(ring.clone(), h)?;
    let residue = spec.at_precision(1);
    let (seed, cap) = (ctx.seed, ctx.cap);
    let gens = match generators(s, &spec)? {
        Some(g) => g,
        None => {
            let mut gen = rng(seed);
            residue
                .standard_generators()
                .iter()
                .map(|x| random_lift(&spec, x, &mut gen))
                .collect::<weilkit::Result<Vec<_>>>()?
        }
    };
    let mut full = None;
    ctx.push(Check::run(
        "lifting",
        "fullness modulo l lifts to fullness modulo l^N",
        || {
            let r = lifting_check(&spec, &gens, true, cap)?;
            full = Some(r.full);
            Ok((r.implication_holds && r.kernel_divides, r))
        },
    ));
    if let Some(f) = full {
        ctx.observe("full", f);
    }
    let trials = s.trials.unwrap_or(DEFAULT_TRIALS);
    ctx.push(Check::run("random_lifts", "random lifts of a full residue set are full", || {
        let t = random_lift_trials(&spec, &residue.standard_generators(), trials, seed, cap)?;
        let orders: Vec<u64> = t.reports.iter().map(|r| r.order).collect();
        Ok((t.counterexamples == 0, json!({"seed": t.seed, "trials": trials, "all_full": t.all_full, "counterexamples": t.counterexamples, "orders": orders})))
    }));
    if m.precision() >= 2 {
        let mut size = None;
        ctx.push(Check::run(
            "reduction_kernel",
            "kernel of reduction is elementary abelian",
            || {
                let k = reduction_kernel(&spec, cap)?;
                size = Some(k.size);
                Ok((k.size == k.predicted && k.elementary_abelian, k))
            },
        ));
        if let Some(k) = size {
            ctx.observe("kernel", k);
        }
    }
    if let Some(p) = &s.poly {
        let samples = s.samples.unwrap_or(DEFAULT_SAMPLES);
        ctx.push(Check::run(
            "crt_product",
            "Sp over an etale algebra is the product over components",
            || {
                let alg = EtaleAlgebra::split(m, p)?;
                let r = crt_product_check(h, &alg, samples, seed, cap)?;
                Ok((r.passed(), r))
            },
        ));
    }
    Ok(())
}
