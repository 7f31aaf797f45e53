//! The `check` verb: one decision per name, with a re-validated witness.

use std::path::PathBuf;
use std::sync::Arc;

use clap::ValueEnum;
use serde_json::{json, Value};

use digitopo::functions::{self, FiniteFunction};
use digitopo::homotopy::{self, Flavor, HomotopyMode, HomotopyTable};
use digitopo::hyperspace::{FamilyKind, SubsetFamily};
use digitopo::io::{self, EgsWitnessDoc, FunctionDoc, HomotopyDoc};
use digitopo::lattice::{self, Point};
use digitopo::multivalued::{self, EgsBudget, MultiFunction};
use digitopo::Error;

use crate::{read, with_path, Budgets, Failure};

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CheckName {
    Connected,
    Continuity,
    Isomorphism,
    Retraction,
    InducedContinuity,
    FamilyContinuity,
    InducingMap,
    PhiAdjacent,
    PsiAdjacent,
    Homotopic,
    StronglyHomotopic,
    Homotopy,
    Contractible,
    WeakContinuity,
    StrongContinuity,
    ConnectivityPreserving,
    EgsContinuity,
}

pub struct Request<'a> {
    pub inputs: &'a [PathBuf],
    pub kind: Option<FamilyKind>,
    pub flavor: Option<Flavor>,
    pub basepoint: Option<&'a str>,
    pub strong: bool,
    pub budgets: Budgets,
}

pub struct Verdict {
    pub check: String,
    pub result: bool,
    pub detail: Vec<String>,
    pub witness: Value,
}

impl Verdict {
    fn new(name: CheckName, result: bool) -> Self {
        Verdict {
            check: name.to_possible_value().expect("named").get_name().to_string(),
            result,
            detail: Vec::new(),
            witness: Value::Null,
        }
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.detail.push(line.into());
        self
    }

    fn witness(mut self, w: Value) -> Self {
        self.witness = w;
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.check, self.result);
        for line in &self.detail {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({"check": self.check, "result": self.result, "witness": self.witness})
    }
}

impl Request<'_> {
    fn input(&self, i: usize, what: &str) -> Result<&PathBuf, Failure> {
        self.inputs
            .get(i)
            .ok_or_else(|| Failure::Usage(format!("this check needs {} input(s): {what}", i + 1)))
    }

    fn load<T>(&self, i: usize, what: &str, parse: impl Fn(&str) -> digitopo::Result<T>) -> Result<T, Failure> {
        let path = self.input(i, what)?;
        parse(&read(path)?).map_err(|e| with_path(path, e))
    }

    fn basepoint(&self) -> Result<Option<Point>, Failure> {
        self.basepoint.map(parse_point).transpose()
    }
}

/// `2`, `1,0` or `[1,0]`.
fn parse_point(s: &str) -> Result<Point, Failure> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map(Point::new)
        .map_err(|e| Failure::Usage(format!("bad point {s:?}: {e}")))
}

fn internal(what: &str) -> Failure {
    Failure::Verification(format!("internal: {what} failed re-validation\n"))
}

fn homotopy_lines(h: &HomotopyTable) -> Vec<String> {
    let mut out = vec![format!("m = {}", h.m())];
    for t in 0..=h.m() {
        let f = h.slice(t);
        let pairs: Vec<String> = f.pairs().iter().map(|(a, b)| format!("{a}->{b}")).collect();
        out.push(format!("t={t}: {}", pairs.join("; ")));
    }
    out
}

fn homotopy_json(h: &HomotopyTable) -> Value {
    serde_json::to_value(HomotopyDoc::from_table(h)).expect("json")
}

pub fn run(name: CheckName, req: &Request) -> Result<Verdict, Failure> {
    let b = req.budgets;
    match name {
        CheckName::Connected => {
            let x = req.load(0, "image", io::read_image)?;
            let comps = x.components();
            Ok(Verdict::new(name, comps.len() == 1)
                .note(format!("components: {}", comps.len()))
                .witness(json!({"components": comps.len()})))
        }
        CheckName::Continuity => {
            let f = req.load(0, "function", io::read_function)?;
            match functions::continuity_violation(&f) {
                None => Ok(Verdict::new(name, true)),
                Some((a, c)) => {
                    let (fa, fc) = (f.apply(&a)?, f.apply(&c)?);
                    let adj_dom = lattice::cu_adjacent(&a, &c, f.domain().adjacency())?;
                    let adj_cod = lattice::adjacent_or_equal(fa, fc, f.codomain().adjacency())?;
                    if !adj_dom || adj_cod {
                        return Err(internal("continuity witness"));
                    }
                    Ok(Verdict::new(name, false)
                        .note(format!("{a} and {c} are adjacent, but {fa} and {fc} are not"))
                        .witness(json!([a, c])))
                }
            }
        }
        CheckName::Isomorphism => {
            let f = req.load(0, "function", io::read_function)?;
            Ok(Verdict::new(name, functions::is_isomorphism(&f)))
        }
        CheckName::Retraction => {
            let r = req.load(0, "function X -> Y with Y inside X", io::read_function)?;
            let y = r.codomain().points().to_vec();
            Ok(Verdict::new(name, functions::is_retraction(&r, &y)?))
        }
        CheckName::InducedContinuity => {
            let f = req.load(0, "function", io::read_function)?;
            let kind = req.kind.unwrap_or(FamilyKind::Connected);
            let fam = SubsetFamily::of_kind(f.domain(), kind, b.budget_points)?;
            let lifted = match functions::induced_map(&f, &fam, b.budget_points) {
                Ok(m) => m,
                Err(Error::InvalidInput(msg)) => return Ok(Verdict::new(name, false).note(msg)),
                Err(e) => return Err(e.into()),
            };
            Ok(match functions::family_continuity_violation(&lifted) {
                None => Verdict::new(name, true),
                Some((a, c)) => {
                    let (la, lc) = (fam.label(a), fam.label(c));
                    Verdict::new(name, false)
                        .note(format!("{la} and {lc} are adjacent, their images are not"))
                        .witness(json!([fam.points_of(a), fam.points_of(c)]))
                }
            })
        }
        CheckName::FamilyContinuity => {
            let map = req.load(0, "family function", io::read_family_function)?;
            Ok(match functions::family_continuity_violation(&map) {
                None => Verdict::new(name, true),
                Some((a, c)) => {
                    let d = map.domain();
                    Verdict::new(name, false)
                        .note(format!("{} and {} are adjacent, their images are not", d.label(a), d.label(c)))
                        .witness(json!([d.points_of(a), d.points_of(c)]))
                }
            })
        }
        CheckName::InducingMap => {
            let map = req.load(0, "family function", io::read_family_function)?;
            match functions::find_inducing_map(&map, b.budget_functions)? {
                None => Ok(Verdict::new(name, false).note("no continuous map induces this family map")),
                Some(f) => {
                    if functions::induced_map_into(&f, map.domain(), map.codomain())? != map {
                        return Err(internal("inducing map"));
                    }
                    let pairs: Vec<String> = f.pairs().iter().map(|(a, c)| format!("{a}->{c}")).collect();
                    Ok(Verdict::new(name, true)
                        .note(pairs.join("; "))
                        .witness(serde_json::to_value(FunctionDoc::from_function(&f)).expect("json")))
                }
            }
        }
        CheckName::PhiAdjacent | CheckName::PsiAdjacent => {
            let f = req.load(0, "two functions", io::read_function)?;
            let g = req.load(1, "two functions", io::read_function)?;
            if f == g && f.domain() == g.domain() {
                return Ok(Verdict::new(name, false).note("the maps are equal"));
            }
            let cod = f.codomain().adjacency();
            if matches!(name, CheckName::PhiAdjacent) {
                Ok(match homotopy::phi_violation(&f, &g)? {
                    None => Verdict::new(name, true),
                    Some(x) => {
                        if lattice::adjacent_or_equal(f.apply(&x)?, g.apply(&x)?, cod)? {
                            return Err(internal("phi witness"));
                        }
                        Verdict::new(name, false)
                            .note(format!("f({x}) = {} and g({x}) = {} are not adjacent", f.apply(&x)?, g.apply(&x)?))
                            .witness(json!(x))
                    }
                })
            } else {
                Ok(match homotopy::psi_violation(&f, &g)? {
                    None => Verdict::new(name, true),
                    Some((x0, x1)) => {
                        let (a, c) = (f.apply(&x0)?, g.apply(&x1)?);
                        let linked = lattice::adjacent_or_equal(&x0, &x1, f.domain().adjacency())?;
                        if !linked || lattice::adjacent_or_equal(a, c, cod)? {
                            return Err(internal("psi witness"));
                        }
                        Verdict::new(name, false)
                            .note(format!("f({x0}) = {a} and g({x1}) = {c} are not adjacent"))
                            .witness(json!([x0, x1]))
                    }
                })
            }
        }
        CheckName::Homotopic | CheckName::StronglyHomotopic => {
            let f = req.load(0, "two functions", io::read_function)?;
            let g = req.load(1, "two functions", io::read_function)?;
            let (flavor, mode) = match name {
                CheckName::Homotopic => (Flavor::Phi, HomotopyMode::Plain),
                _ => (Flavor::Psi, HomotopyMode::Strong),
            };
            let base = req.basepoint()?;
            let d = match &base {
                Some(p) => homotopy::pointed_homotopic(&f, &g, p, flavor, b.budget_functions)?,
                None if flavor == Flavor::Phi => homotopy::homotopic(&f, &g, b.budget_functions)?,
                None => homotopy::strongly_homotopic(&f, &g, b.budget_functions)?,
            };
            match d.table() {
                None => Ok(Verdict::new(name, false).note("no path joins the maps in the function graph")),
                Some(h) => {
                    if !homotopy::verify_homotopy(&h, &f, &g, mode, base.as_ref()) {
                        return Err(internal("homotopy witness"));
                    }
                    let mut v = Verdict::new(name, true).witness(homotopy_json(&h));
                    v.detail = homotopy_lines(&h);
                    Ok(v)
                }
            }
        }
        CheckName::Homotopy => {
            let h = req.load(0, "homotopy", io::read_homotopy)?;
            let mode = if req.strong { HomotopyMode::Strong } else { HomotopyMode::Plain };
            let base = req.basepoint()?;
            let ok = homotopy::verify_homotopy(&h, &h.slice(0), &h.slice(h.m()), mode, base.as_ref());
            Ok(Verdict::new(name, ok).note(format!("m = {}", h.m())))
        }
        CheckName::Contractible => {
            let x = Arc::new(req.load(0, "image", io::read_image)?);
            let flavor = req.flavor.unwrap_or(Flavor::Phi);
            let base = req.basepoint()?;
            match homotopy::contraction(&x, flavor, base.as_ref(), b.budget_functions)? {
                None => Ok(Verdict::new(name, false).note("the identity reaches no constant map")),
                Some(h) => {
                    let id = FiniteFunction::identity(x.clone());
                    let end = h.slice(h.m());
                    let mode = match flavor {
                        Flavor::Phi => HomotopyMode::Plain,
                        Flavor::Psi => HomotopyMode::Strong,
                    };
                    let constant = end.table().iter().all(|&v| v == end.table()[0]);
                    if !constant || !homotopy::verify_homotopy(&h, &id, &end, mode, base.as_ref()) {
                        return Err(internal("contraction"));
                    }
                    let mut v = Verdict::new(name, true).witness(homotopy_json(&h));
                    v.detail = homotopy_lines(&h);
                    Ok(v)
                }
            }
        }
        CheckName::WeakContinuity => {
            let f = req.load(0, "multifunction", io::read_multifunction)?;
            Ok(match multivalued::weak_continuity_violation(&f) {
                None => Verdict::new(name, true),
                Some((x, y)) => Verdict::new(name, false)
                    .note(format!("F({x}) and F({y}) have no adjacent or equal points"))
                    .witness(json!([x, y])),
            })
        }
        CheckName::StrongContinuity => {
            let f = req.load(0, "multifunction", io::read_multifunction)?;
            Ok(match multivalued::strong_continuity_violation(&f) {
                None => Verdict::new(name, true),
                Some((x, y, p)) => {
                    let partners = f.value(&y)?;
                    let cod = f.codomain().adjacency();
                    for q in &partners {
                        if lattice::adjacent_or_equal(&p, q, cod)? {
                            return Err(internal("strong continuity witness"));
                        }
                    }
                    Verdict::new(name, false)
                        .note(format!("{p} in F({x}) has no neighbor in F({y})"))
                        .witness(json!({"x": x, "y": y, "point": p}))
                }
            })
        }
        CheckName::ConnectivityPreserving => {
            let f = req.load(0, "multifunction", io::read_multifunction)?;
            Ok(match multivalued::connectivity_violation(&f, b.budget_points)? {
                None => Verdict::new(name, true),
                Some(a) => Verdict::new(name, false)
                    .note(format!("F(A) is disconnected for A = {}", points_text(&a)))
                    .witness(json!(a)),
            })
        }
        CheckName::EgsContinuity => {
            let f: MultiFunction = req.load(0, "multifunction", io::read_multifunction)?;
            let budget = EgsBudget {
                max_points: b.budget_subdivision,
                max_nodes: b.budget_nodes as u64,
            };
            match multivalued::is_egs_continuous(&f, b.r_max, budget)? {
                None => Ok(Verdict::new(name, false).note(format!("not generated for any r <= {}", b.r_max))),
                Some(w) => {
                    if !multivalued::generates(&f, &w) {
                        return Err(internal("generator"));
                    }
                    let pairs: Vec<String> = w.generator.pairs().iter().map(|(a, c)| format!("{a}->{c}")).collect();
                    Ok(Verdict::new(name, true)
                        .note(format!("r = {} (coordinates scaled by r)", w.r))
                        .note(pairs.join("; "))
                        .witness(serde_json::to_value(EgsWitnessDoc::from_witness(&w)).expect("json")))
                }
            }
        }
    }
}

fn points_text(pts: &[Point]) -> String {
    let s: Vec<String> = pts.iter().map(ToString::to_string).collect();
    format!("{{{}}}", s.join(", "))
}
