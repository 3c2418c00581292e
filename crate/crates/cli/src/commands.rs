// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use og10_lattice::disc::genus_tag;
use og10_lattice::embeddings::{
    extend_isometry, overlattice_from_glue, u_summand_certificate, CertificateSearch,
    HyperbolicCertificate, SummandMode,
};
use og10_lattice::lattice::{
    enumerate_vectors, standard, Isometry, Lattice, Sublattice, VectorQuery,
};
use og10_lattice::og10::{
    build_ld, classify_symplectic_involution, gamma_v, hassett_admissible, hassett_scan,
    hassett_star, hassett_star_prime, is_numerical_moduli_space, is_twisted_numerical_moduli_space,
    InvolutionClass, LdGlue, MarkedHodgeLattice, Verdict, OG10_EXPR,
};
use og10_lattice::text::{write_discform, Document};
use og10_lattice::{discriminant_group, Error, Result};
use serde_json::{json, Value};

use crate::input::{self, need};
use crate::report::{ints, opt, rationals, rows, Report};
use crate::{Command, Outcome};

const NS_ASSUMPTION: &str = "the ns sublattice is the (1,1) part";

pub fn run(command: &Command, radius: u32) -> Result<(Outcome, Report)> {
    match command {
        Command::Info { lattice } => info(&input::lattice(lattice)?),
        Command::Disc { lattice, machine } => disc(&input::lattice(lattice)?, *machine),
        Command::Complement { lattice, vectors } => {
            let sub = sublattice(lattice, vectors)?;
            let c = sub.orthogonal_complement();
            let mut r = Report::new();
            r.put("rank", c.rank()).put("basis", rows(c.basis()));
            if c.rank() > 0 {
                r.put("gram", rows(&c.gram()));
            }
            Ok((Outcome::Success, r))
        }
        Command::Saturate { lattice, vectors } => {
            let sat = sublattice(lattice, vectors)?.saturation();
            let mut r = Report::new();
            r.put("index", sat.index)
                .put("basis", rows(sat.sublattice.basis()));
            Ok((Outcome::Success, r))
        }
        Command::Enumerate {
            lattice,
            square,
            divisibility,
            primitive,
        } => {
            let l = input::lattice(lattice)?;
            let mut q = VectorQuery::default().radius(radius);
            if let Some(s) = square {
                q = q.with_square(*s);
            }
            if let Some(d) = divisibility {
                q = q.with_divisibility(*d);
            }
            if *primitive {
                q = q.primitive(true);
            }
            let vs = enumerate_vectors(&l, &q)?;
            let mut r = Report::new();
            r.put("radius", radius)
                .put("count", vs.len())
                .put("vectors", rows(&vs));
            Ok((Outcome::Success, r))
        }
        Command::GammaV { v_perp } => gamma(&input::lattice(v_perp)?),
        Command::Nms { file, sigma } => nms(file, sigma.as_deref(), radius, None),
        Command::NmsTwisted {
            file,
            sigma,
            embedding_only,
        } => {
            let mode = if *embedding_only {
                SummandMode::EmbeddingOnly
            } else {
                SummandMode::DirectSummand
            };
            nms(file, sigma.as_deref(), radius, Some(mode))
        }
        Command::Hassett { d, range } => hassett(*d, range.as_deref()),
        Command::BuildLd { vd_square, glue } => ld(*vd_square, glue, radius),
        Command::Involution { file } => involution(file, radius),
        Command::Glue { s, k, glue } => {
            let (s, k) = (input::lattice(s)?, input::lattice(k)?);
            let data = overlattice_from_glue(&s, &k, &input::rational_rows(glue)?)?;
            let m = &data.overlattice;
            let mut r = Report::new();
            r.put("index", data.index)
                .put("rank", m.rank())
                .put("det", m.det())
                .put("even", m.is_even())
                .put("gram", rows(m.gram()))
                .put("inclusion", rows(&data.inclusion()));
            Ok((Outcome::Success, r))
        }
        Command::ExtendIsometry { file } => extend(file),
    }
}

fn sublattice(lattice: &str, vectors: &str) -> Result<Sublattice> {
    let l = Arc::new(input::lattice(lattice)?);
    Sublattice::new(l, input::int_rows(vectors)?)
}

fn info(l: &Lattice) -> Result<(Outcome, Report)> {
    let sig = l.signature();
    let mut r = Report::new();
    r.put("rank", l.rank())
        .put("signature", format!("({},{})", sig.positive, sig.negative))
        .put("det", l.det())
        .put("abs_det", l.det().unsigned_abs())
        .put("even", l.is_even())
        .put("unimodular", l.is_unimodular());
    if l.is_even() {
        let a = discriminant_group(l)?;
        r.put("disc", disc_group_name(a.invariant_factors()));
    }
    Ok((Outcome::Success, r))
}

fn disc_group_name(factors: &[i64]) -> String {
    if factors.is_empty() {
        return "trivial".into();
    }
    factors
        .iter()
        .map(|d| format!("Z/{d}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn disc(l: &Lattice, machine: bool) -> Result<(Outcome, Report)> {
    let a = discriminant_group(l)?;
    let k = a.invariant_factors().len();
    let mut r = Report::new();
    r.put("group", ints(a.invariant_factors()))
        .put("order", a.order()?)
        .put(
            "q",
            Value::Array(
                (0..k)
                    .map(|i| Value::String(a.q_value(i).to_string()))
                    .collect(),
            ),
        )
        .put(
            "b",
            Value::Array(
                (0..k)
                    .map(|i| {
                        Value::Array(
                            (0..k)
                                .map(|j| Value::String(a.b_value(i, j).to_string()))
                                .collect(),
                        )
                    })
                    .collect(),
            ),
        )
        .put(
            "generators",
            Value::Array(a.generators().iter().map(|g| rationals(g)).collect()),
        );
    if machine {
        r.put("machine", write_discform("A", &a));
    }
    Ok((Outcome::Success, r))
}

fn gamma(v_perp: &Lattice) -> Result<(Outcome, Report)> {
    let g = gamma_v(v_perp)?;
    let l = g.lattice();
    let tag_matches = genus_tag(l)? == genus_tag(&standard(OG10_EXPR)?)?;
    let mut r = Report::new();
    r.put("rank", l.rank())
        .put("det", l.det())
        .put("even", l.is_even())
        .put("index", g.glue.index)
        .put("genus_matches_og10", tag_matches)
        .put("e_image", ints(&g.e_image))
        .put("e_square", l.square(&g.e_image)?)
        .put("e_divisibility", l.divisibility(&g.e_image)?)
        .put("gram", rows(l.gram()));
    Ok((Outcome::Success, r))
}

fn marked(doc: &Document) -> Result<MarkedHodgeLattice> {
    let l = match doc.lattice("L") {
        Some(l) => l.clone(),
        None => need(doc.first_lattice().map(|(_, l)| l), "lattice")?.clone(),
    };
    let ns = need(doc.vectors("ns"), "ns")?.to_vec();
    MarkedHodgeLattice::new(Arc::new(l), ns)
}

fn certificate(c: &HyperbolicCertificate) -> Value {
    json!({
        "e": c.e,
        "f": c.f,
        "n": c.n,
        "summand": c.summand,
    })
}

fn verdict_report(v: &Verdict) -> (Outcome, Report) {
    use og10_lattice::og10::Outcome as O;
    let outcome = match v.outcome {
        O::Yes => Outcome::Success,
        O::No => Outcome::No,
        O::Inconclusive { .. } => Outcome::Inconclusive,
    };
    let mut r = Report::new();
    r.put("outcome", v.outcome.to_string())
        .put("radius", v.radius)
        .put("reason", v.reason.clone())
        .put("sigmas_tried", v.sigmas_tried)
        .put("sigma", opt(v.sigma.as_deref().map(ints)));
    if let Some(m) = v.mode {
        r.put("mode", m.to_string());
    }
    if let Some(model) = v.model {
        r.put("embedding_model", format!("{model:?}").to_lowercase());
    }
    if let Some(w) = &v.w {
        r.put("w", ints(w));
    }
    if let Some(ns) = &v.induced_ns {
        r.put("induced_ns", rows(ns));
    }
    if let Some(c) = &v.certificate {
        r.put("certificate", certificate(c));
    }
    if let Some(m) = &v.mukai_w {
        r.put("mukai_w", json!({ "r": m.r, "l": m.l, "s": m.s }));
    }
    if let Some(t) = &v.twisted {
        r.put(
            "twisted",
            json!({
                "n": t.n,
                "e": t.e,
                "f_n": t.f_n,
                "f": t.f,
                "k": t.k,
                "gamma": t.gamma,
                "b_field": rationals(&t.b_field),
            }),
        );
    }
    r.put("assumption", NS_ASSUMPTION);
    (outcome, r)
}

fn nms(
    file: &str,
    sigma: Option<&str>,
    radius: u32,
    mode: Option<SummandMode>,
) -> Result<(Outcome, Report)> {
    let doc = input::document(file)?;
    let x = marked(&doc)?;
    let sigma = match sigma {
        Some(s) => Some(single_vector(s)?),
        None => doc.vectors("sigma").map(|v| v[0].clone()),
    };
    let v = match mode {
        None => is_numerical_moduli_space(&x, sigma.as_deref(), radius)?,
        Some(m) => is_twisted_numerical_moduli_space(&x, sigma.as_deref(), radius, m)?,
    };
    Ok(verdict_report(&v))
}

fn single_vector(spec: &str) -> Result<Vec<i64>> {
    let mut rows = input::int_rows(spec)?;
    if rows.len() != 1 {
        return Err(Error::Syntax {
            line: 1,
            token: spec.to_string(),
            message: "expected exactly one vector".into(),
        });
    }
    Ok(rows.remove(0))
}

fn hassett(d: Option<u64>, range: Option<&str>) -> Result<(Outcome, Report)> {
    let mut r = Report::new();
    match (d, range) {
        (Some(d), None) => {
            let sp = hassett_star_prime(d);
            let star = hassett_star(d);
            let fact: Vec<String> = sp
                .factorization
                .iter()
                .map(|(p, e)| format!("{p}^{e}"))
                .collect();
            r.put("d", d)
                .put("admissible", hassett_admissible(d))
                .put("star", star.is_some())
                .put("witness", opt(star))
                .put("star_prime", sp.holds)
                .put("half_d_factorization", fact.join(" "));
            if let Some(note) = sp.note {
                r.put("note", note);
            }
        }
        (None, Some(spec)) => {
            let table: Vec<Value> = hassett_scan(input::range(spec)?)
                .into_iter()
                .map(|row| {
                    json!({
                        "d": row.d,
                        "admissible": row.admissible,
                        "star": row.star.is_some(),
                        "star_prime": row.star_prime,
                        "witness": row.star.map_or(Value::String("-".into()), Value::from),
                    })
                })
                .collect();
            r.put("rows", Value::Array(table));
        }
        _ => {
            return Err(Error::Syntax {
                line: 1,
                token: "hassett".into(),
                message: "give either d or --range a..b".into(),
            })
        }
    }
    Ok((Outcome::Success, r))
}

fn search_report(r: &mut Report, search: &CertificateSearch) -> Outcome {
    match search {
        CertificateSearch::Found(c) => {
            r.put("u_certificate", "found")
                .put("certificate", certificate(c));
            Outcome::Success
        }
        CertificateSearch::Absent(o) => {
            r.put("u_certificate", "absent")
                .put("obstruction", o.to_string());
            Outcome::No
        }
        CertificateSearch::NotFound { radius } => {
            r.put("u_certificate", format!("not found at radius {radius}"));
            Outcome::Inconclusive
        }
    }
}

fn ld(vd_square: i64, glue: &str, radius: u32) -> Result<(Outcome, Report)> {
    let spec = match glue.trim() {
        "trivial" => LdGlue::Trivial,
        "order3" => LdGlue::OrderThree,
        other => LdGlue::Custom(input::rational_rows(other)?),
    };
    let ld = build_ld(vd_square, &spec)?;
    let l = ld.lattice();
    let mut r = Report::new();
    r.put("d", ld.d)
        .put("index", ld.glue.index)
        .put("gram", rows(l.gram()))
        .put(
            "glue",
            Value::Array(ld.glue.glue.iter().map(|g| rationals(g)).collect()),
        )
        .put("star", hassett_star(ld.d).is_some())
        .put("radius", radius);
    let outcome = search_report(&mut r, &u_summand_certificate(l, None, radius)?);
    Ok((outcome, r))
}

fn involution(file: &str, radius: u32) -> Result<(Outcome, Report)> {
    let doc = input::document(file)?;
    let x = marked(&doc)?;
    let g = need(doc.matrix("g"), "g")?.to_vec();
    let g = Isometry::automorphism((**x.lattice()).clone(), g)?;
    let c = classify_symplectic_involution(&x, &g, radius)?;
    let mut r = Report::new();
    r.put("class", c.class.to_string())
        .put("radius", radius)
        .put("invariant_rank", c.invariant.rank())
        .put("coinvariant_rank", c.coinvariant.rank())
        .put("disc_action_trivial", c.disc_trivial)
        .put(
            "invariant_tag",
            json!({
                "rank": c.report.invariant_tag.rank,
                "signature": format!("({},{})", c.report.invariant_tag.signature.positive, c.report.invariant_tag.signature.negative),
                "invariant_factors": c.report.invariant_tag.invariant_factors,
                "milgram_residue": c.report.invariant_tag.milgram_residue,
            }),
        )
        .put("invariant", rows(c.invariant.basis()))
        .put("coinvariant", rows(c.coinvariant.basis()));
    if let Some(phi) = &c.report.coinvariant_witness {
        r.put("coinvariant_to_e8_minus_2", rows(phi.matrix()));
    }
    if let Some(w) = &c.witness {
        r.put("sigma", ints(&w.sigma))
            .put("invariant_ns", rows(&w.invariant_ns))
            .put("certificate", certificate(&w.certificate));
    }
    if let Some(o) = &c.obstruction {
        r.put("obstruction", o.clone());
    }
    r.put("assumption", NS_ASSUMPTION);
    let outcome = match c.class {
        InvolutionClass::InducedType => Outcome::Success,
        InvolutionClass::Inconclusive { .. } => Outcome::Inconclusive,
        InvolutionClass::ExcludedEvenDiv | InvolutionClass::Other => Outcome::No,
    };
    Ok((outcome, r))
}

fn extend(file: &str) -> Result<(Outcome, Report)> {
    let doc = input::document(file)?;
    let s = need(doc.lattice("S"), "S")?;
    let k = need(doc.lattice("K"), "K")?;
    let glue = need(doc.glue("m"), "m")?;
    let m = overlattice_from_glue(s, k, glue)?;
    let m2 = match doc.glue("m2") {
        Some(g) => overlattice_from_glue(s, k, g)?,
        None => m.clone(),
    };
    let phi_s = Isometry::automorphism(s.clone(), need(doc.matrix("phi_s"), "phi_s")?.to_vec())?;
    let phi_k = Isometry::automorphism(k.clone(), need(doc.matrix("phi_k"), "phi_k")?.to_vec())?;
    let mut r = Report::new();
    match extend_isometry(&m, &m2, &phi_s, &phi_k) {
        Ok(beta) => {
            r.put("extends", true).put("matrix", rows(beta.matrix()));
            Ok((Outcome::Success, r))
        }
        Err(Error::GlueMismatch(i)) => {
            r.put("extends", false).put("glue_mismatch", i);
            Ok((Outcome::No, r))
        }
        Err(e) => Err(e),
    }
}
