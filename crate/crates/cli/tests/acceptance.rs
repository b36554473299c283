//! Acceptance suite: runs every criterion, prints one PASS/FAIL line each,
//! then fails unless the set of failing criteria is exactly `KNOWN_RED`.

use std::collections::{BTreeSet, HashMap};
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use skewbrace::enumerate::pq::pq_group;
use skewbrace::hgs::{
    brace_to_regular, check_action_on_dot, is_regular, normalized_by, regular_to_brace,
    InducedSetting,
};
use skewbrace::sdp::{internal_to_external, is_internal_sdp, make_sdp_brace, pair_code};
use skewbrace::stock::{self, Factorization};
use skewbrace::{
    are_isomorphic, automorphisms, count_by_type, cross_check, enumerate_braces, homomorphisms,
    pq_catalog, FiniteGroup, PermGroup, Permutation, PqKind, SdpSpec, SkewBrace,
};

/// Criteria that cannot pass as stated. Criterion 5 includes the identity
/// `λ_X(g) ρ̄(a) λ_X(ḡ) = ρ̄(γ_g(a))`, which fails whenever θ is nontrivial
/// (for instance on the 32-element stock product); regularity and
/// normalization of `ρ̄(A)` hold everywhere.
const KNOWN_RED: &[usize] = &[5];

type Criterion<'a> = (usize, &'a str, Box<dyn Fn() -> Verdict>);

struct Verdict {
    pass: bool,
    detail: String,
    /// Fails exactly in the documented way.
    red_as_documented: bool,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
        red_as_documented: false,
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f();
    let elapsed = start.elapsed();
    let within = elapsed <= limit;
    verdict(
        v.pass && within,
        format!(
            "{}; {:.1}s of {}s",
            v.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        ),
    )
}

fn is_witness(g: &FiniteGroup, h: &FiniteGroup, w: &Permutation) -> bool {
    (0..g.n()).all(|x| (0..g.n()).all(|y| w.apply(g.op(x, y)) == h.op(w.apply(x), w.apply(y))))
}

fn stock_product_end_to_end() -> Verdict {
    let a = stock::c8_brace_dihedral_dot();
    let b = stock::c4_brace_klein_dot();
    let d4 = FiniteGroup::dihedral(4);
    let klein = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    let a_iso = are_isomorphic(a.dot(), &d4).is_some_and(|w| is_witness(a.dot(), &d4, &w));
    let b_iso = are_isomorphic(b.dot(), &klein).is_some_and(|w| is_witness(b.dot(), &klein, &w));
    let gamma_ok = (0..4).all(|i| (0..4).all(|j| b.gamma_at(i, j) == (2 * i + 1) * j % 4));

    let theta = stock::c8_c4_theta();
    let conj = Permutation::new((0..8).map(|x| a.dot().conj(2, x)).collect()).unwrap();
    let id = Permutation::identity(8);
    let theta_ok = theta.images() == [id.clone(), conj.clone(), id, conj].as_slice();

    let spec = SdpSpec::new(a, b, stock::c8_c4_phi(), theta).unwrap();
    let admissible = spec.is_admissible();
    let brace = make_sdp_brace(&spec).ok();
    let a_part: Vec<usize> = (0..8).map(|i| pair_code(i, 0, 4)).collect();
    let b_part: Vec<usize> = (0..4).map(|j| pair_code(0, j, 4)).collect();
    let (size, ideal, left) = match &brace {
        Some(x) => (
            x.n(),
            x.classify_subset(&a_part).is_ideal,
            x.classify_subset(&b_part).is_left_ideal,
        ),
        None => (0, false, false),
    };
    verdict(
        a_iso && b_iso && gamma_ok && theta_ok && admissible && size == 32 && ideal && left,
        format!(
            "(A,·)≅D4 {a_iso}, (B,·)≅C2xC2 {b_iso}, γ table {gamma_ok}, θ shape {theta_ok}, \
             admissible {admissible}, order {size}, (A,e) ideal {ideal}, (e,B) left ideal {left}"
        ),
    )
}

fn pq_counts() -> Verdict {
    let cases = [
        (3, 2, PqKind::Cyclic, "C6", "D3", 1, 2),
        (3, 2, PqKind::Metacyclic, "C6", "D3", 3, 2),
        (7, 3, PqKind::Cyclic, "C21", "C7:C3", 1, 4),
        (7, 3, PqKind::Metacyclic, "C21", "C7:C3", 7, 16),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (p, q, which, cyc, meta, want_c, want_m) in cases {
        let cat = pq_catalog(p, q, which).unwrap();
        let counts = count_by_type(&cat);
        let c = counts.get(cyc).copied().unwrap_or(0);
        let m = counts.get(meta).copied().unwrap_or(0);
        let ok = c == want_c && m == want_m && cat.len() == want_c + want_m;
        pass &= ok;
        parts.push(format!("({p},{q},{which}) {} = {c}+{m}", cat.len()));
    }
    verdict(pass, parts.join(", "))
}

fn oracle_cross_check() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for which in [PqKind::Cyclic, PqKind::Metacyclic] {
        let g = pq_group(3, 2, which);
        let oracle = enumerate_braces(&g, None, None).unwrap();
        let constructive = pq_catalog(3, 2, which).unwrap();
        let diff = cross_check(&oracle, &constructive).unwrap();
        pass &= diff.is_empty();
        parts.push(format!(
            "{which}: oracle {} vs constructive {}, {} differing",
            oracle.len(),
            constructive.len(),
            diff.only_in_first.len() + diff.only_in_second.len()
        ));
    }
    verdict(pass, parts.join("; "))
}

/// Every `(A, B, φ, θ)` of the stock pool with `θ` ranging over all
/// homomorphisms `(B, ·) → Aut(A, ·)`.
fn for_each_sdp_instance(mut visit: impl FnMut(&SdpSpec)) {
    for (a, b, phi) in stock::sdp_triples() {
        let aut = automorphisms(a.dot());
        for theta in homomorphisms(b.dot(), &aut) {
            let spec = SdpSpec::new(a.clone(), b.clone(), phi.clone(), theta).unwrap();
            visit(&spec);
        }
    }
}

fn admissibility_equivalence() -> Verdict {
    let (mut total, mut admissible, mut discrepancies) = (0, 0, 0);
    for_each_sdp_instance(|spec| {
        let (dot, circ) = spec.external_tables();
        let valid = SkewBrace::new(dot, circ).is_ok();
        let adm = spec.is_admissible();
        total += 1;
        admissible += usize::from(adm);
        discrepancies += usize::from(valid != adm);
    });
    verdict(
        discrepancies == 0 && total > 0,
        format!("{total} instances, {admissible} admissible, {discrepancies} discrepancies"),
    )
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        self.failures += usize::from(!ok);
    }

    fn ok(&self) -> bool {
        self.checked > 0 && self.failures == 0
    }
}

fn catalogs() -> HashMap<String, Vec<SkewBrace>> {
    stock::factorization_groups()
        .into_iter()
        .map(|(name, g)| {
            let cat = enumerate_braces(&g, None, None).unwrap();
            (name, cat.braces().cloned().collect())
        })
        .collect()
}

fn braces_on(g: &FiniteGroup) -> Vec<SkewBrace> {
    enumerate_braces(g, None, None)
        .unwrap()
        .braces()
        .cloned()
        .collect()
}

/// A transposition-conjugate of `s`, usually no longer normalized by any
/// translation group.
fn scramble(s: &PermGroup) -> PermGroup {
    let deg = s.deg();
    let t = Permutation::new(
        (0..deg)
            .map(|x| match x {
                0 => 1.min(deg - 1),
                1 => 0,
                _ => x,
            })
            .collect(),
    )
    .unwrap();
    s.conjugate(&t)
}

fn structural_properties() -> Verdict {
    let mut sdp_flags = Tally::default();
    let mut round_trip = Tally::default();
    let mut opposite = Tally::default();
    let mut opposite_sides = BTreeSet::new();
    let mut transfer = Tally::default();
    let mut transfer_sides = BTreeSet::new();
    let mut on_dot = Tally::default();
    let mut on_dot_sides = BTreeSet::new();
    let mut induced = Tally::default();
    let mut rho_regular = Tally::default();
    let mut rho_identity = Tally::default();
    let mut identity_pairs = 0usize;

    let mut untwisted_identity = Tally::default();

    // Returns whether the literal conjugation identity held.
    let mut check_rho = |brace: &SkewBrace, setting: &InducedSetting| -> bool {
        let result = catch_unwind(AssertUnwindSafe(|| setting.rho_bar(brace)));
        match result {
            Ok(Ok(rb)) => {
                rho_regular.record(
                    is_regular(&rb.group)
                        && normalized_by(&rb.group, &setting.space().lambda_all()),
                );
                let failures = setting.rho_bar_gamma_failures(brace, &rb);
                identity_pairs += failures.len();
                rho_identity.record(failures.is_empty());
                failures.is_empty()
            }
            _ => {
                rho_regular.record(false);
                false
            }
        }
    };

    // Semidirect products from the stock pool.
    for_each_sdp_instance(|spec| {
        let Ok(brace) = make_sdp_brace(spec) else {
            return;
        };
        let nb = spec.b().n();
        let a_part: Vec<usize> = (0..spec.a().n()).map(|i| pair_code(i, 0, nb)).collect();
        let b_part: Vec<usize> = (0..nb).collect();
        sdp_flags.record(
            brace.classify_subset(&a_part).is_ideal
                && brace.classify_subset(&b_part).is_left_ideal
                && is_internal_sdp(&brace, &a_part, &b_part),
        );
        let back = catch_unwind(AssertUnwindSafe(|| {
            internal_to_external(&brace, &a_part, &b_part)
        }));
        round_trip.record(match back {
            Ok(Ok(d)) => {
                d.a_brace == *spec.a()
                    && d.b_brace == *spec.b()
                    && d.phi == *spec.phi()
                    && d.theta == *spec.theta()
                    && d.delta.is_identity()
                    && a_part
                        .iter()
                        .all(|&x| b_part.iter().all(|&y| brace.gamma_at(x, y) == y))
            }
            _ => false,
        });
        let setting = InducedSetting::new(brace.circ(), &a_part, &b_part).unwrap();
        let held = check_rho(&brace, &setting);
        if spec.theta().is_trivial() {
            untwisted_identity.record(held);
        }
    });

    // Left ideals of opposites, over every brace of order at most 8.
    let catalogs = catalogs();
    for (_, g) in stock::groups_up_to_8() {
        for brace in braces_on(&g) {
            let op = brace.opposite();
            for h in g.all_subgroups() {
                let lhs = op.classify_subset(&h).is_left_ideal;
                let rhs = skewbrace::brace::satisfies_conjugation_criterion(&brace, &h);
                opposite.record(lhs == rhs);
                opposite_sides.insert(lhs);
            }
        }
    }

    for f in stock::factorizations() {
        let Factorization { name, circ, a, b } = &f;
        let setting = InducedSetting::new(circ, a, b).unwrap();
        let a_braces = braces_on(&setting.a_circ());
        let b_braces = braces_on(&setting.b_circ());

        for a_brace in &a_braces {
            let rho = brace_to_regular(a_brace);
            for m in [
                setting.psi().backward_set(&rho),
                setting.psi().backward_set(&scramble(&rho)),
            ] {
                let c = setting.check_normalization_transfer(&m);
                transfer.record(c.agrees());
                transfer_sides.insert(c.lhs);
            }
            let c = check_action_on_dot(a_brace, setting.phi());
            on_dot.record(c.agrees());
            on_dot_sides.insert(c.lhs);

            let m = setting.psi().backward_set(&rho);
            if setting.check_normalization_transfer(&m).lhs {
                for b_brace in &b_braces {
                    let equal = catch_unwind(AssertUnwindSafe(|| {
                        setting.induced_equals_sdp(a_brace, b_brace)
                    }));
                    induced.record(matches!(equal, Ok(Ok(true))));
                }
            }
        }

        // Braces on G that split as A ⋊ B.
        let on_g: Vec<SkewBrace> = match catalogs.get(name) {
            Some(list) if list[0].circ() == circ => list.clone(),
            _ => Vec::new(),
        };
        for brace in &on_g {
            if is_internal_sdp(brace, a, b) {
                check_rho(brace, &setting);
                let d = internal_to_external(brace, a, b);
                round_trip.record(match d {
                    Ok(d) => make_sdp_brace(&d.spec()).ok() == Some(brace.relabel(&d.delta)),
                    Err(_) => false,
                });
            }
        }
    }

    let both = |s: &BTreeSet<bool>| s.len() == 2;
    let checks = [
        ("product ideal flags", sdp_flags.ok(), &sdp_flags),
        ("internal/external round trip", round_trip.ok(), &round_trip),
        (
            "opposite left-ideal criterion",
            opposite.ok() && both(&opposite_sides),
            &opposite,
        ),
        (
            "normalization transfer",
            transfer.ok() && both(&transfer_sides),
            &transfer,
        ),
        (
            "action on the dot group",
            on_dot.ok() && both(&on_dot_sides),
            &on_dot,
        ),
        ("induced equals trivial-θ product", induced.ok(), &induced),
        (
            "ρ̄(A) regular and normalized",
            rho_regular.ok(),
            &rho_regular,
        ),
        ("ρ̄ conjugation identity", rho_identity.ok(), &rho_identity),
    ];
    let pass = checks.iter().all(|(_, ok, _)| *ok);
    let (identity, others) = checks.split_last().unwrap();
    let red_as_documented = !identity.1
        && others.iter().all(|(_, ok, _)| *ok)
        && untwisted_identity.ok()
        && untwisted_identity.checked == stock::sdp_triples().len();
    let detail = checks
        .iter()
        .map(|(name, ok, t)| {
            format!(
                "{name}: {} ({} checked, {} failed)",
                if *ok { "ok" } else { "FAIL" },
                t.checked,
                t.failures
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Verdict {
        red_as_documented,
        ..verdict(
            pass,
            format!(
                "{detail}; identity fails on {identity_pairs} (g, a) pairs in total and holds on \
             {} of {} products with trivial θ",
                untwisted_identity.checked - untwisted_identity.failures,
                untwisted_identity.checked
            ),
        )
    }
}

fn correspondence_round_trip() -> Verdict {
    let (mut braces, mut subgroups, mut failures) = (0, 0, 0);
    for (_, g) in stock::groups_up_to_8() {
        let cat = enumerate_braces(&g, None, None).unwrap();
        let mut from_braces = BTreeSet::new();
        for brace in cat.braces() {
            braces += 1;
            let s = brace_to_regular(brace);
            if regular_to_brace(&s, &g).ok().as_ref() != Some(brace) {
                failures += 1;
            }
            from_braces.insert(s.elements().to_vec());
        }
        // Left translations of each dot group: a census of the regular
        // subgroups normalized by λ_∘(G) that does not go through
        // brace_to_regular.
        let mut census = BTreeSet::new();
        for brace in cat.braces() {
            let s = brace.dot().left_regular();
            census.insert(s.elements().to_vec());
        }
        for elements in &census {
            subgroups += 1;
            let s = PermGroup::from_elements(g.n(), elements.clone()).unwrap();
            match regular_to_brace(&s, &g) {
                Ok(brace) if brace_to_regular(&brace) == s => {}
                _ => failures += 1,
            }
        }
        if census != from_braces || census.len() != cat.len() {
            failures += 1;
        }
    }
    verdict(
        failures == 0,
        format!("{braces} braces, {subgroups} regular subgroups, {failures} failures"),
    )
}

fn run_cli(args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_skewbrace"))
        .args(args)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let s3 = path("s3.json");
    std::fs::write(&s3, skewbrace::io::group_to_json(&FiniteGroup::dihedral(3))).unwrap();
    let d4 = path("d4.json");
    std::fs::write(&d4, skewbrace::io::group_to_json(&FiniteGroup::dihedral(4))).unwrap();

    let runs: Vec<(&str, Vec<String>)> = vec![
        (
            "pq 7 3 metacyclic",
            vec!["pq".into(), "7".into(), "3".into()],
        ),
        (
            "pq 7 3 cyclic",
            vec![
                "pq".into(),
                "7".into(),
                "3".into(),
                "--which".into(),
                "cyclic".into(),
            ],
        ),
        ("enumerate S3", vec!["enumerate".into(), s3.clone()]),
        (
            "enumerate D4",
            vec!["enumerate".into(), d4.clone(), "--seed".into(), "5".into()],
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, (label, args)) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for k in 0..2 {
            let out = path(&format!("run{i}-{k}.json"));
            let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
            full.extend(["--output", out.as_str()]);
            let ok = run_cli(&full);
            outputs.push(if ok { std::fs::read(&out).ok() } else { None });
        }
        let same = outputs[0].is_some() && outputs[0] == outputs[1];
        pass &= same;
        parts.push(format!(
            "{label}: {}",
            if same { "identical" } else { "differs" }
        ));
    }
    verdict(pass, parts.join(", "))
}

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "32-element stock product end to end",
            Box::new(|| timed(Duration::from_secs(5), stock_product_end_to_end)),
        ),
        (
            2,
            "degree-pq counts",
            Box::new(|| timed(Duration::from_secs(60), pq_counts)),
        ),
        (
            3,
            "oracle vs constructive catalogs",
            Box::new(|| timed(Duration::from_secs(120), oracle_cross_check)),
        ),
        (
            4,
            "admissibility iff valid brace",
            Box::new(admissibility_equivalence),
        ),
        (5, "structural properties", Box::new(structural_properties)),
        (
            6,
            "brace/regular-subgroup round trip",
            Box::new(correspondence_round_trip),
        ),
        (7, "byte-identical catalogs", Box::new(determinism)),
    ];
    // Written to the process's stdout directly so the lines appear even
    // when the harness captures test output.
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    let mut red = Vec::new();
    for (i, name, run) in &criteria {
        let v = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| verdict(false, "panicked"));
        writeln!(
            out,
            "criterion {i}: {} {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        )
        .unwrap();
        out.flush().unwrap();
        if !v.pass {
            red.push(*i);
            assert!(
                KNOWN_RED.contains(i) && v.red_as_documented,
                "criterion {i} failed in an undocumented way"
            );
        }
    }
    assert_eq!(
        red, KNOWN_RED,
        "failing criteria differ from the documented set"
    );
}
