use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ramsey_rings::builder::{self, BuildBounds, VerifyReport};
use ramsey_rings::configs;
use ramsey_rings::extract::{self, Strategy};
use ramsey_rings::harness::{self, Coloring, HindmanBounds};
use ramsey_rings::sets::{find_j_witness, JBounds, JOutcome};
use ramsey_rings::{Error, GaussianInt, LipschitzQuat, Ring, SequenceSource, SetDescription};

use crate::args::{Cli, Command, Kind, Mode, RingKind, SeqArgs, Side, StrategyArg};
use crate::Status;

/// The ring-specific pieces the commands need.
pub trait CliRing: Ring {
    fn divrem(x: &Self, z: &Self, side: Side) -> ramsey_rings::Result<(Self, Self)>;
    fn cosets(z: &Self, side: Side) -> ramsey_rings::Result<Vec<Self>>;
    fn interleave(x: &SequenceSource<Self>) -> SequenceSource<Self>;
    fn from_coords(c: &[i64]) -> Self;
    const DIM: usize;
}

impl CliRing for GaussianInt {
    fn divrem(x: &Self, z: &Self, _: Side) -> ramsey_rings::Result<(Self, Self)> {
        x.div_rem_round(z)
    }
    fn cosets(z: &Self, _: Side) -> ramsey_rings::Result<Vec<Self>> {
        GaussianInt::coset_reps(z)
    }
    fn interleave(x: &SequenceSource<Self>) -> SequenceSource<Self> {
        configs::interleave_gaussian(x)
    }
    fn from_coords(c: &[i64]) -> Self {
        GaussianInt::new(c[0], c[1])
    }
    const DIM: usize = 2;
}

impl CliRing for LipschitzQuat {
    fn divrem(x: &Self, z: &Self, side: Side) -> ramsey_rings::Result<(Self, Self)> {
        match side {
            Side::Right => x.right_div_rem(z),
            Side::Left => x.left_div_rem(z),
        }
    }
    fn cosets(z: &Self, side: Side) -> ramsey_rings::Result<Vec<Self>> {
        match side {
            Side::Right => LipschitzQuat::left_coset_reps(z),
            Side::Left => LipschitzQuat::right_coset_reps(z),
        }
    }
    fn interleave(x: &SequenceSource<Self>) -> SequenceSource<Self> {
        configs::interleave_quaternion(x)
    }
    fn from_coords(c: &[i64]) -> Self {
        LipschitzQuat::new(c[0], c[1], c[2], c[3])
    }
    const DIM: usize = 4;
}

pub fn run(cli: Cli) -> Result<(Status, Value)> {
    match cli.ring {
        RingKind::Gauss => dispatch::<GaussianInt>(cli.command),
        RingKind::Quat => dispatch::<LipschitzQuat>(cli.command),
    }
}

pub fn not_found_json(err: &Error) -> Value {
    let mut v = json!({ "result": "not_found", "message": err.to_string() });
    if let Error::NotFound { deepest, depth, backtracks } = err {
        v["deepest"] = json!(deepest);
        v["depth"] = json!(depth);
        v["backtracks"] = json!(backtracks);
    }
    v
}

fn elem<R: Ring>(s: &str) -> Result<R> {
    s.trim().parse().with_context(|| format!("bad ring element {s:?}"))
}

fn list<R: Ring>(s: &str) -> Result<Vec<R>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(elem).collect()
}

fn set<R: Ring>(s: &str) -> Result<SetDescription<R>> {
    s.parse().with_context(|| format!("bad set description {s:?}"))
}

fn random_terms<R: CliRing>(seed: u64, bound: usize) -> Vec<R> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..bound)
        .map(|_| {
            let c: Vec<i64> = (0..R::DIM).map(|_| rng.gen_range(-50..=50)).collect();
            R::from_coords(&c)
        })
        .collect()
}

fn read_terms<R: Ring>(path: &str) -> Result<Vec<R>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(elem).collect()
}

fn sequence<R: CliRing>(spec: &str, bound: usize) -> Result<SequenceSource<R>> {
    Ok(match spec.split_once(':') {
        None => match spec {
            "ones" => SequenceSource::ones(bound),
            "zeros" => SequenceSource::zeros(bound),
            "naturals" => SequenceSource::naturals(bound),
            _ => bail!("unknown sequence {spec:?}"),
        },
        Some(("const", e)) => SequenceSource::constant(elem(e)?, bound),
        Some(("random", seed)) => {
            let seed = seed.parse().with_context(|| format!("bad seed {seed:?}"))?;
            SequenceSource::Explicit(random_terms(seed, bound))
        }
        Some(("interleave", inner)) => R::interleave(&sequence(inner, bound)?),
        Some(("terms", l)) => SequenceSource::Explicit(list(l)?),
        Some(("file", path)) => SequenceSource::Explicit(read_terms(path)?),
        Some((kind, _)) => bail!("unknown sequence kind {kind:?}"),
    })
}

fn sequences<R: CliRing>(args: &SeqArgs) -> Result<Vec<SequenceSource<R>>> {
    let mut out = args.seq.iter().map(|s| sequence(s, args.bound)).collect::<Result<Vec<_>>>()?;
    if let Some(t) = &args.terms {
        out.push(SequenceSource::Explicit(list(t)?));
    }
    if let Some(p) = &args.file {
        out.push(SequenceSource::Explicit(read_terms(&p.to_string_lossy())?));
    }
    if out.is_empty() {
        bail!("no sequence given; use --seq, --terms or --file");
    }
    Ok(out)
}

fn one_sequence<R: CliRing>(args: &SeqArgs) -> Result<SequenceSource<R>> {
    let mut all = sequences(args)?;
    if all.len() > 1 {
        bail!("this command takes exactly one sequence");
    }
    Ok(all.remove(0))
}

fn domain<R: Ring>(spec: &str) -> Result<Vec<R>> {
    if let Some(r) = spec.strip_prefix("box:") {
        return Ok(R::coordinate_box(r.parse().with_context(|| format!("bad radius {r:?}"))?));
    }
    let (lo, hi) = spec.split_once("..").with_context(|| format!("domain must be LO..HI or box:R, got {spec:?}"))?;
    Ok(harness::interval(lo.trim().parse()?, hi.trim().parse()?))
}

fn coloring<R: Ring>(spec: &str, dom: &str) -> Result<Coloring<R>> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
        return Ok(Coloring::from_json(&serde_json::from_str(&text)?)?);
    }
    let d = domain(dom)?;
    let mut parts = spec.split(':');
    Ok(match (parts.next(), parts.next(), parts.next()) {
        (Some("constant"), None, _) => Coloring::constant(d),
        (Some("parity"), None, _) => Coloring::parity(d),
        (Some("residue"), Some(z), None) => Coloring::residue(d, &elem(z)?)?,
        (Some("random"), Some(seed), colors) => {
            let colors = colors.map(str::parse).transpose()?.unwrap_or(2);
            Coloring::random(d, colors, seed.parse()?)?
        }
        _ => bail!("unknown coloring {spec:?}"),
    })
}

fn verify<R: Ring>(terms: &[R], a: &SetDescription<R>, mode: Mode) -> ramsey_rings::Result<VerifyReport<R>> {
    match mode {
        Mode::FsFp => builder::verify_fs_fp(terms, a),
        Mode::Leftprod => builder::verify_fs_leftprod(terms, a),
        Mode::Ap => builder::verify_fs_ap(terms, a),
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Negative
    }
}

fn dispatch<R: CliRing>(cmd: Command) -> Result<(Status, Value)> {
    match cmd {
        Command::Divrem { x, z, side } => {
            let (q, r) = R::divrem(&elem(&x)?, &elem(&z)?, side)?;
            Ok((Status::Ok, json!({ "q": q, "r": r })))
        }
        Command::Cosets { z, side } => {
            let z: R = elem(&z)?;
            let reps = R::cosets(&z, side)?;
            Ok((Status::Ok, json!({ "z": z, "index": reps.len(), "reps": reps })))
        }
        Command::Extract { seq, z, m, strategy } => {
            let x = one_sequence::<R>(&seq)?;
            let strategy = match strategy {
                StrategyArg::A => Strategy::PrefixSum,
                StrategyArg::B => Strategy::EqualRemainder,
            };
            let cert = extract::extract_certificate(&x, &elem(&z)?, m, strategy)?;
            Ok((Status::Ok, serde_json::to_value(cert)?))
        }
        Command::UnionExtract { seq, z, count, levels } => {
            let family = sequences::<R>(&seq)?;
            let z: R = elem(&z)?;
            let all = extract::common_divisible_levels(&family, &z, count)?;
            let blocks = all.last().expect("family is nonempty");
            let sums = family
                .iter()
                .map(|f| blocks.iter().map(|b| f.block_sum(b)).collect::<ramsey_rings::Result<Vec<_>>>())
                .collect::<ramsey_rings::Result<Vec<_>>>()?;
            let mut v = json!({ "z": z, "blocks": blocks, "sums": sums });
            if levels {
                v["levels"] = json!(all);
            }
            Ok((Status::Ok, v))
        }
        Command::Config { kind, terms } => {
            let terms: Vec<R> = list(&terms)?;
            let (name, values, expressions) = match kind {
                Kind::Fs => ("FS", configs::fs(&terms)?, None),
                Kind::Fp => ("FP", configs::fp(&terms)?, None),
                Kind::Ap => {
                    let a = configs::ap(&terms)?;
                    ("AP", a.values, Some(a.expressions))
                }
                Kind::Ps => ("PS", configs::ps(&terms)?, None),
                Kind::Pp => ("PP", configs::pp(&terms)?, None),
            };
            let mut v = json!({ "kind": name, "values": values });
            if let Some(n) = expressions {
                v["expressions"] = json!(n);
            }
            Ok((Status::Ok, v))
        }
        Command::Build { seq, set: s, depth, mode, blocks_per_level, backtracks } => {
            let x = one_sequence::<R>(&seq)?;
            let a = set(&s)?;
            let bounds = BuildBounds { blocks_per_level, backtracks };
            let sys = match mode {
                Mode::FsFp => builder::build_fs_fp(&x, &a, depth, &bounds)?,
                Mode::Leftprod => builder::build_fs_leftprod(&x, &a, depth, &bounds)?,
                Mode::Ap => builder::build_fs_ap(&x, &a, depth, &bounds)?,
            };
            let report = verify(&sys.terms, &a, mode)?;
            let sound = builder::check_block_system(&x, &sys)?;
            if !sound {
                eprintln!("ramsey-rings: block system failed re-verification");
            }
            Ok((status(report.passes() && sound), builder::certificate(&sys, &a, &report)))
        }
        Command::Verify { terms, set: s, mode } => {
            let terms: Vec<R> = list(&terms)?;
            let a = set(&s)?;
            let report = verify(&terms, &a, mode)?;
            let v = json!({
                "terms": terms,
                "set": a.to_string(),
                "pass": report.passes(),
                "verified": report.to_json(),
            });
            Ok((status(report.passes()), v))
        }
        Command::JWitness { seq, set: s, a_radius, h_range } => {
            let family = sequences::<R>(&seq)?
                .iter()
                .map(|f| f.prefix(h_range))
                .collect::<ramsey_rings::Result<Vec<_>>>()?;
            let a = set(&s)?;
            let out = find_j_witness(&family, &a, &JBounds { a_radius, h_range })?;
            let found = matches!(out, JOutcome::Found { .. });
            Ok((status(found), serde_json::to_value(out)?))
        }
        Command::Schur { n, colors } => {
            let out = harness::schur_search(n, colors)?;
            let mut v = serde_json::to_value(out)?;
            v["n"] = json!(n);
            v["colors"] = json!(colors);
            Ok((Status::Ok, v))
        }
        Command::Hindman { coloring: c, domain: d, k, nodes } => {
            let col = coloring::<R>(&c, &d)?;
            let w = harness::hindman_witness(&col, k, &HindmanBounds { nodes })?;
            Ok((Status::Ok, serde_json::to_value(w)?))
        }
        Command::Pspp { terms, coloring: c, domain: d } => {
            let terms: Vec<R> = list(&terms)?;
            let col = coloring::<R>(&c, &d)?;
            let report = harness::pspp_check(&terms, &col)?;
            let colors: BTreeMap<String, usize> = report.colors.iter().map(|(c, n)| (c.to_string(), *n)).collect();
            let mut v = serde_json::to_value(&report)?;
            v["colors"] = json!(colors);
            Ok((Status::Ok, v))
        }
        Command::Batch { .. } => bail!("batch cannot be nested"),
    }
}
