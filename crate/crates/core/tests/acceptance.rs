//! Acceptance criteria, one line per criterion. Run with
//! `cargo test -p twuality --test acceptance`.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;

use twuality::multimatroid::{lift_unchecked, Multimatroid};
use twuality::orbit::{cycle_violation, StabilizerHit};
use twuality::ribbon::{catalog, medial, split_components, verify_transition_lift};
use twuality::*;

use common::*;

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sys(n: usize, sets: &[&[usize]]) -> SetSystem {
    SetSystem::from_lists(n, sets).unwrap()
}

fn fv(text: &str) -> FlipVector {
    FlipVector::parse(text).unwrap()
}

fn set(elements: &[usize]) -> ElementSet {
    elements.iter().copied().collect()
}

fn almost_power_set() -> Outcome {
    for n in 3..=5 {
        let d = SetSystem::new(n, (0..(1u32 << n) - 1).map(ElementSet::from_bits)).unwrap();
        ensure!(d.is_delta_matroid().is_valid(), "n={n}: 2^[n] minus [n] rejected");
        let w = d.loop_complement(set(&[1])).unwrap().is_delta_matroid();
        let want = DeltaMatroidWitness::ExchangeFails {
            x: ElementSet::EMPTY,
            y: ElementSet::full(n),
            u: 1,
        };
        ensure!(w == want, "n={n}: D+1 gave {w:?}");
    }
    Ok("n = 3, 4, 5".into())
}

fn group_laws() -> Outcome {
    let distinct: BTreeSet<Flip> = Flip::ALL.into_iter().collect();
    ensure!(distinct.len() == 6, "flip group has {} elements", distinct.len());
    ensure!(Flip::Twist.mul(Flip::Twist) == Flip::Identity, "*^2 != 1");
    ensure!(Flip::Loop.mul(Flip::Loop) == Flip::Identity, "+^2 != 1");
    ensure!(Flip::Twist.mul(Flip::Loop).pow(3) == Flip::Identity, "(*+)^3 != 1");
    ensure!(reduce_word("*+*+*+").unwrap() == Flip::Identity, "word (*+)^3 != 1");
    let mut rng = rng(2);
    for k in 0..10_000 {
        let n = rng.gen_range(1..=6);
        let (a, b, c) = (random_element(&mut rng, n), random_element(&mut rng, n), random_element(&mut rng, n));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        ensure!(left == right, "sample {k}: associativity fails for {a}, {b}, {c}");
        let id = TwualityElement::identity(n);
        ensure!(a.mul(&a.inverse()).unwrap() == id, "sample {k}: a a^-1 != 1 for {a}");
        ensure!(a.inverse().mul(&a).unwrap() == id, "sample {k}: a^-1 a != 1 for {a}");
        ensure!(a.mul(&id).unwrap() == a && id.mul(&a).unwrap() == a, "sample {k}: identity law");
    }
    Ok("10^4 samples".into())
}

fn action_laws() -> Outcome {
    let mut rng = rng(3);
    for k in 0..1_000 {
        let n = rng.gen_range(1..=5);
        let (a, b) = (random_element(&mut rng, n), random_element(&mut rng, n));
        let d = random_system(&mut rng, n);
        let lhs = a.mul(&b).unwrap().act(&d).unwrap();
        let rhs = a.act(&b.act(&d).unwrap()).unwrap();
        ensure!(lhs == rhs, "sample {k}: (ab)D != a(bD) for {a}, {b}, {d}");
        ensure!(TwualityElement::identity(n).act(&d).unwrap() == d, "sample {k}: identity moved {d}");
    }
    Ok("10^3 samples".into())
}

fn stabilizer_worked_example() -> Outcome {
    let d = sys(3, &[&[3], &[1, 3], &[2, 3]]);
    let stab = TwualityElement::flips(fv("*,+,+"));
    let hits = stabilizer_search(&d, StabilizerMode::All).map_err(|e| e.to_string())?;
    ensure!(hits.iter().any(|h| h.element == stab), "((*,+,+), id) not found");

    let mv = TwualityElement::flips(fv("+,*,*"));
    let (moved, new_stab) = transport(&d, &stab, &mv).map_err(|e| e.to_string())?;
    let target = sys(3, &[&[], &[1], &[2]]);
    let uniform = TwualityElement::flips(FlipVector::uniform(3, Flip::DualTwist));
    ensure!(moved == target, "transport moved D to {moved}");
    ensure!(new_stab == uniform, "transported stabilizer is {new_stab}");

    let uniform_hits = stabilizer_search(&target, StabilizerMode::Uniform).map_err(|e| e.to_string())?;
    ensure!(
        uniform_hits
            .iter()
            .any(|h: &StabilizerHit| h.element == uniform && h.is_canonical() && h.uniform == Some(Flip::DualTwist)),
        "uniform search on D' misses (~,~,~) via id"
    );

    let res = uniformize(&d, &fv("*,+,+"), &Perm::identity(3), Flip::DualTwist).map_err(|e| e.to_string())?;
    ensure!(res.target == target && res.hvec == fv("+,*,*"), "uniformize gave {} via {}", res.target, res.hvec);
    Ok("stabilizer, transport and uniformize agree".into())
}

/// A random element whose flip vector is not the identity.
fn random_non_trivial(rng: &mut impl Rng, n: usize) -> TwualityElement {
    loop {
        let a = random_element(rng, n);
        if !a.gvec().is_identity() {
            return a;
        }
    }
}

fn transport_conjugates_stabilizers() -> Outcome {
    let mut rng = rng(5);
    let mut k = 0;
    while k < 200 {
        let n = rng.gen_range(1..=4);
        let stab = random_non_trivial(&mut rng, n);
        let Some(d) = fixed_by(&mut rng, &stab) else {
            continue;
        };
        let mv = random_element(&mut rng, n);
        let (moved, new_stab) = transport(&d, &stab, &mv).map_err(|e| format!("instance {k}: {e}"))?;
        ensure!(moved == mv.act(&d).unwrap(), "instance {k}: moved system differs");
        ensure!(new_stab.act(&moved).unwrap() == moved, "instance {k}: {new_stab} does not fix {moved}");
        let conj = mv.mul(&stab).unwrap().mul(&mv.inverse()).unwrap();
        ensure!(conj == new_stab, "instance {k}: formula gives {new_stab}, conjugation gives {conj}");
        k += 1;
    }
    Ok("200 instances, n <= 4".into())
}

fn uniformization_and_refusal() -> Outcome {
    let mut rng = rng(6);
    let mut k = 0;
    while k < 100 {
        let n = rng.gen_range(1..=4);
        let g = Flip::NON_IDENTITY[rng.gen_range(0..5)];
        let mu = random_perm(&mut rng, n);
        let uniform = TwualityElement::new(FlipVector::uniform(n, g), mu.clone()).unwrap();
        let Some(du) = fixed_by(&mut rng, &uniform) else {
            continue;
        };
        let conj = TwualityElement::flips(random_gvec(&mut rng, n));
        let dp = conj.act(&du).unwrap();
        let stab = conj.mul(&uniform).unwrap().mul(&conj.inverse()).unwrap();
        ensure!(stab.perm() == &mu, "instance {k}: conjugation changed the permutation");
        ensure!(cycle_condition(stab.gvec(), &mu, g).unwrap(), "instance {k}: order condition fails for {stab}");
        let res = uniformize(&dp, stab.gvec(), &mu, g).map_err(|e| format!("instance {k}: {e}"))?;
        ensure!(uniform.act(&res.target).unwrap() == res.target, "instance {k}: result not fixed by {uniform}");
        ensure!(
            TwualityElement::flips(res.hvec.clone()).act(&dp).unwrap() == res.target,
            "instance {k}: result not reached by the returned flip vector"
        );
        k += 1;
    }
    let mut refused = 0;
    let mut attempts = 0;
    while refused < 100 {
        attempts += 1;
        ensure!(attempts < 100_000, "could not build violating instances");
        let n = rng.gen_range(1..=4);
        let stab = random_non_trivial(&mut rng, n);
        let g = Flip::NON_IDENTITY[rng.gen_range(0..5)];
        if cycle_violation(stab.gvec(), stab.perm(), g).unwrap().is_none() {
            continue;
        }
        let Some(d) = fixed_by(&mut rng, &stab) else {
            continue;
        };
        match uniformize(&d, stab.gvec(), stab.perm(), g) {
            Err(Error::CycleCondition { .. }) => refused += 1,
            other => return Err(format!("{stab} toward {g}: expected refusal, got {other:?}")),
        }
    }
    Ok("100 round-trips, 100 refusals".into())
}

fn lift_identities() -> Outcome {
    let mut rng = rng(7);
    let sample = vf_safe_sample(&mut rng, 100, 4);
    let mut checks = 0;
    for (k, d) in sample.iter().enumerate() {
        let n = d.n();
        let tau = random_triple(&mut rng, n);
        let sigma = random_projection(&mut rng, n);
        let z = lift(d, &tau, &sigma).map_err(|e| format!("sample {k}: {e}"))?;
        ensure!(extract(&z, &tau, &sigma).unwrap() == *d, "sample {k}: extract(lift) != {d}");
        let inv = sigma.relabel.inverse();
        for i in 1..=n {
            let class = inv.image(i);
            for (g, moved) in [(Flip::Loop, d.loop_complement(set(&[i]))), (Flip::Twist, d.twist(set(&[i])))] {
                let lhs = lift_unchecked(&moved.unwrap(), &tau.flip(g, class).unwrap(), &sigma).unwrap();
                ensure!(lhs == z, "sample {k}: flip-then-lift identity fails for {g} at {i} on {d}");
                checks += 1;
            }
        }
        for _ in 0..50 {
            let a = random_element(&mut rng, n);
            let lhs = lift_unchecked(&a.act(d).unwrap(), &tau, &sigma).unwrap();
            let rhs = lift_unchecked(
                d,
                &tau.twist_by(a.gvec(), &sigma).unwrap(),
                &sigma.then(&a.perm().inverse()),
            )
            .unwrap();
            ensure!(lhs == rhs, "sample {k}: relabel-then-lift identity fails for {a} on {d}");
            checks += 1;
        }
    }
    Ok(format!("{} systems, {checks} identities", sample.len()))
}

/// For every proper system on `[n]`, all its lifts, keyed by multimatroid.
fn lift_preimages(n: usize) -> HashMap<Multimatroid, BTreeSet<SetSystem>> {
    let triples = TransversalTriple::all(n);
    let projections: Vec<Projection> = Perm::all(n).map(Projection::new).collect();
    let mut map: HashMap<Multimatroid, BTreeSet<SetSystem>> = HashMap::new();
    for d in all_proper_systems(n) {
        for t in &triples {
            for s in &projections {
                map.entry(lift_unchecked(&d, t, s).unwrap()).or_default().insert(d.clone());
            }
        }
    }
    map
}

fn orbits_as_lift_classes() -> Outcome {
    let mut rng = rng(8);
    let mut sample = Vec::new();
    while sample.len() < 20 {
        let n = 1 + sample.len() % 3;
        sample.extend(vf_safe_sample(&mut rng, 1, n).into_iter().filter(|d| d.n() == n));
    }
    let preimages: Vec<_> = (1..=3).map(lift_preimages).collect();
    for (k, d) in sample.iter().enumerate() {
        let n = d.n();
        let tau = random_triple(&mut rng, n);
        let sigma = random_projection(&mut rng, n);
        for mode in [OrbitMode::Full, OrbitMode::Iota] {
            let direct = orbit(d, mode).unwrap().elements;
            let via = orbit_via_lift(d, &tau, &sigma, mode).map_err(|e| e.to_string())?;
            ensure!(direct == via, "sample {k} ({d}), {mode:?}: orbit {} vs lift {}", direct.len(), via.len());
        }
        let z = lift(d, &tau, &sigma).unwrap();
        let same_lift: Vec<SetSystem> = preimages[n - 1][&z].iter().cloned().collect();
        let full = orbit(d, OrbitMode::Full).unwrap().elements;
        ensure!(same_lift == full, "sample {k} ({d}): {} systems share the lift, orbit has {}", same_lift.len(), full.len());
    }
    Ok("20 systems, n <= 3, full and iota".into())
}

fn lifts_are_tight_multimatroids() -> Outcome {
    let mut rng = rng(9);
    let mut lifts = Vec::new();
    for d in vf_safe_sample(&mut rng, 100, 4) {
        let n = d.n();
        lifts.push(lift(&d, &random_triple(&mut rng, n), &random_projection(&mut rng, n)).unwrap());
    }
    for g in catalog::full(3, 3) {
        let d = delta_matroid_of(&g).unwrap();
        let n = d.n();
        lifts.push(lift_unchecked(&d, &TransversalTriple::reference(n), &g.labelling()).unwrap());
    }
    for z in &lifts {
        let mm = z.is_multimatroid().unwrap();
        ensure!(mm.is_valid(), "{z}: {mm:?}");
        let t = z.is_tight().unwrap();
        ensure!(t.is_tight(), "{z}: {t:?}");
    }
    Ok(format!("{} lifts", lifts.len()))
}

fn transition_matroid_equals_lift() -> Outcome {
    let graphs = catalog::full(3, 3);
    for g in &graphs {
        let check = verify_transition_lift(g).map_err(|e| format!("{g}: {e}"))?;
        ensure!(
            check.equal,
            "{g}: medial-only {:?}, lift-only {:?}",
            check.medial_only,
            check.lift_only
        );
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn medial_sanity() -> Outcome {
    let graphs = catalog::full(3, 3);
    for g in &graphs {
        let fm = medial(g);
        let m = g.edge_count();
        let uniform = |r: u8| SubTransversal::from_choice(&vec![r; m]).unwrap();
        let black = split_components(&fm, uniform(1)).unwrap();
        let white = split_components(&fm, uniform(2)).unwrap();
        ensure!(black == g.vertex_count(), "{g}: all-black {black} != |V| {}", g.vertex_count());
        ensure!(white == g.boundary_components(), "{g}: all-white {white} != b {}", g.boundary_components());
    }
    Ok(format!("{} graphs", graphs.len()))
}

/// `D + i` straight from the definition: add `F ∪ i` for every feasible `F`
/// missing `i`, cancelling pairs.
fn loop_oracle(d: &SetSystem, i: usize) -> SetSystem {
    let mut family: BTreeSet<ElementSet> = d.family().iter().copied().collect();
    for f in d.family().iter().filter(|f| !f.contains(i)) {
        let g = f.with(i);
        if !family.remove(&g) {
            family.insert(g);
        }
    }
    SetSystem::new(d.n(), family).unwrap()
}

fn set_system_properties() -> Outcome {
    let mut rng = rng(12);
    for k in 0..1_000 {
        let n = rng.gen_range(1..=6);
        let d = random_system(&mut rng, n);
        let i = rng.gen_range(1..=n);
        for g in [Flip::Twist, Flip::Loop, Flip::DualTwist] {
            let twice = d.apply_flip(g, i).unwrap().apply_flip(g, i).unwrap();
            ensure!(twice == d, "sample {k}: {g}{i} is not an involution on {d}");
        }
        let mut cur = d.clone();
        for _ in 0..3 {
            cur = cur.apply_flip(Flip::Twist, i).unwrap().apply_flip(Flip::Loop, i).unwrap();
        }
        ensure!(cur == d, "sample {k}: (*+)^3 at {i} moved {d}");
        ensure!(
            d.apply_flip(Flip::DualTwist, i).unwrap()
                == d.apply_flip(Flip::Loop, i).unwrap().apply_flip(Flip::Twist, i).unwrap().apply_flip(Flip::Loop, i).unwrap(),
            "sample {k}: ~ != +*+ at {i}"
        );
        if n >= 2 {
            let j = (i % n) + 1;
            let (f, h) = (random_flip(&mut rng), random_flip(&mut rng));
            let a = d.apply_flip(f, i).unwrap().apply_flip(h, j).unwrap();
            let b = d.apply_flip(h, j).unwrap().apply_flip(f, i).unwrap();
            ensure!(a == b, "sample {k}: {f}{i} and {h}{j} do not commute on {d}");
        }
        ensure!(d.loop_complement(set(&[i])).unwrap() == loop_oracle(&d, i), "sample {k}: +{i} disagrees with definition");
        let x = ElementSet::from_bits(rng.gen_range(0..1u32 << n));
        let seq_loop = x.iter().fold(d.clone(), |e, j| loop_oracle(&e, j));
        ensure!(d.loop_complement(x).unwrap() == seq_loop, "sample {k}: bulk +{x} differs from sequential");
        let seq_dual = x.iter().fold(d.clone(), |e, j| {
            loop_oracle(&loop_oracle(&e, j).twist(set(&[j])).unwrap(), j)
        });
        ensure!(d.dual_twist(x).unwrap() == seq_dual, "sample {k}: bulk ~{x} differs from sequential");
        let seq_twist = x.iter().fold(d.clone(), |e, j| e.twist(set(&[j])).unwrap());
        ensure!(d.twist(x).unwrap() == seq_twist, "sample {k}: bulk *{x} differs from sequential");
    }
    Ok("10^3 systems, n <= 6".into())
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, title: "almost-power-set exchange failure", limit: secs(1), run: almost_power_set },
        Criterion { id: 2, title: "group laws", limit: secs(5), run: group_laws },
        Criterion { id: 3, title: "action laws", limit: secs(10), run: action_laws },
        Criterion { id: 4, title: "worked stabilizer, transport and uniformization", limit: secs(1), run: stabilizer_worked_example },
        Criterion { id: 5, title: "stabilizer transport", limit: secs(30), run: transport_conjugates_stabilizers },
        Criterion { id: 6, title: "uniformization and refusal", limit: secs(60), run: uniformization_and_refusal },
        Criterion { id: 7, title: "lift identities", limit: secs(60), run: lift_identities },
        Criterion { id: 8, title: "orbits as lift classes", limit: secs(60), run: orbits_as_lift_classes },
        Criterion { id: 9, title: "lifts are tight multimatroids", limit: secs(30), run: lifts_are_tight_multimatroids },
        Criterion { id: 10, title: "transition matroid equals lift", limit: secs(60), run: transition_matroid_equals_lift },
        Criterion { id: 11, title: "medial all-black / all-white counts", limit: secs(5), run: medial_sanity },
        Criterion { id: 12, title: "set system involution/commutation suite", limit: secs(10), run: set_system_properties },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        let tag = format!("AC-{:02}", c.id);
        if !filter.is_empty() && !filter.iter().any(|f| tag.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] {tag} {} ({:.2?} of {:?}): {detail}",
            if pass { "PASS" } else { "FAIL" },
            c.title,
            elapsed,
            c.limit
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
