use serde::Serialize;

use diamlab::bounds::{
    compare_bounds, erdos_report, sylow_chain_bound, BoundConstants, BoundsError,
};
use diamlab::cayley::{
    bfs_diameter, class_covering_number, conjugacy_class, enumerate_group,
    exhaustive_group_diameter, find_low_degree_word, CayleyError, MulTable, EXHAUSTIVE_LIMIT,
};
use diamlab::degred::{
    build_singer_block, reduce, select_primes, verify, DegredError, Limits, ReductionCertificate,
};
use diamlab::gf::{build_field, field_with_modulus, Field, GfError};
use diamlab::matrix::{MatrixError, SquareMatrix};
use diamlab::par::Execution;
use diamlab::poly::{factor, root_order, singer_polynomial, PolyError, Polynomial};
use diamlab::wire::{
    factorization_to_json, jordan_to_json, matrix_from_json, matrix_to_json, poly_coeffs,
    poly_from_json, poly_from_json_in, MatrixJson, PolynomialJson, WireError,
};

use crate::input::{load_json, required};
use crate::reports::{CoverReport, ExhaustiveReport, FieldReport, LowDegReport, SingerReport};
use crate::{
    BoundsCommand, CliError, Command, ErrorKind, Outcome, RunConfig, EXIT_MISMATCH, EXIT_OK,
};

const EXEC: Execution = Execution::Parallel;

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        CliError::invalid(e)
    }
}

impl From<WireError> for CliError {
    fn from(e: WireError) -> Self {
        CliError::invalid(e)
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::invalid(e)
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::ExponentTooLarge { .. } => CliError::new(ErrorKind::CapExceeded, e),
            _ => CliError::invalid(e),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::FactorBoundExceeded(_) => {
                CliError::new(ErrorKind::IncompleteFactorization, e)
            }
            _ => CliError::invalid(e),
        }
    }
}

impl From<DegredError> for CliError {
    fn from(e: DegredError) -> Self {
        match e {
            DegredError::FactorBoundExceeded(_) => {
                CliError::new(ErrorKind::IncompleteFactorization, e)
            }
            DegredError::LcmOverflow => CliError::new(ErrorKind::CapExceeded, e),
            DegredError::Matrix(m) => m.into(),
            DegredError::Poly(p) => p.into(),
            _ => CliError::invalid(e),
        }
    }
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::CapExceeded(_)
            | CayleyError::OrderTooLarge(_)
            | CayleyError::NotCovered(_)
            | CayleyError::NotFoundWithinCap {
                exhausted: false, ..
            } => CliError::new(ErrorKind::CapExceeded, e),
            CayleyError::Matrix(m) => m.into(),
            _ => CliError::invalid(e),
        }
    }
}

fn ok<T: Serialize>(report: &T) -> Result<Outcome, CliError> {
    let value =
        serde_json::to_value(report).map_err(|e| CliError::invalid(format!("json: {e}")))?;
    Ok(Outcome {
        value,
        code: EXIT_OK,
        failure: None,
    })
}

fn limits(cfg: &RunConfig) -> Limits {
    Limits {
        factor_bound: cfg.factor_bound,
        exp_bits: cfg.cap_exp_bits,
    }
}

fn field_arg(p: u64, e: Option<u32>, modulus: Option<&String>) -> Result<Field, CliError> {
    match modulus {
        None => Ok(build_field(p, e.unwrap_or(1))?),
        Some(m) => {
            let coeffs: Vec<u64> = serde_json::from_str(m)
                .map_err(|err| CliError::invalid(format!("modulus: {err}")))?;
            let f = field_with_modulus(p, &coeffs)?;
            if let Some(e) = e {
                if e != f.e() {
                    return Err(CliError::invalid(format!(
                        "modulus has degree {}, not {e}",
                        f.e()
                    )));
                }
            }
            Ok(f)
        }
    }
}

fn input_matrix(cfg: &RunConfig) -> Result<SquareMatrix, CliError> {
    let arg = required(cfg.input.as_ref(), "--in")?;
    Ok(matrix_from_json(&load_json::<MatrixJson>(arg, "matrix")?)?)
}

fn generators(cfg: &RunConfig, gens: Option<&String>) -> Result<Vec<SquareMatrix>, CliError> {
    let arg = required(gens.or(cfg.input.as_ref()), "--gens")?;
    let js: Vec<MatrixJson> = load_json(arg, "generators")?;
    js.iter().map(|j| Ok(matrix_from_json(j)?)).collect()
}

pub fn dispatch(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        Command::Field { p, e, modulus } => {
            let f = field_arg(*p, *e, modulus.as_ref())?;
            let spec = f.spec();
            let prime = build_field(*p, 1)?;
            ok(&FieldReport {
                p: spec.p,
                e: spec.e,
                q: f.q(),
                modulus: spec.modulus.clone(),
                modulus_text: Polynomial::from_u64(&prime, &spec.modulus).to_string(),
            })
        }
        Command::Factor => {
            let arg = required(cfg.input.as_ref(), "--in")?;
            let f = poly_from_json(&load_json::<PolynomialJson>(arg, "polynomial")?)?;
            ok(&factorization_to_json(&factor(&f, cfg.seed)?))
        }
        Command::Singer {
            p,
            e,
            modulus,
            d,
            block,
            pad,
        } => {
            let f = field_arg(*p, *e, modulus.as_ref())?;
            match (d, block) {
                (Some(d), None) => {
                    let s = singer_polynomial(&f, *d, cfg.factor_bound)?;
                    ok(&SingerReport {
                        field: f.spec().clone(),
                        d: *d,
                        polynomial: s.to_string(),
                        coeffs: poly_coeffs(&s),
                        root_order: root_order(&s, cfg.factor_bound)?.to_string(),
                    })
                }
                (None, Some(n)) => {
                    if *n == 0 {
                        return Err(CliError::invalid("--block must be at least 1"));
                    }
                    let sel = select_primes(*n);
                    let pad = pad.unwrap_or_else(|| n.saturating_sub(sel.d as usize));
                    ok(&matrix_to_json(&build_singer_block(
                        &sel,
                        &f,
                        pad,
                        cfg.factor_bound,
                    )?))
                }
                _ => Err(CliError::invalid(
                    "singer needs exactly one of --d and --block",
                )),
            }
        }
        Command::Jordan => ok(&jordan_to_json(
            &input_matrix(cfg)?.jordan_structure(cfg.seed),
        )),
        Command::Reduce => ok(&reduce(&input_matrix(cfg)?, cfg.seed, &limits(cfg))?),
        Command::Verify { cert, direct } => {
            let a = input_matrix(cfg)?;
            let cert: ReductionCertificate = load_json(cert, "certificate")?;
            let v = verify(&a, &cert, cfg.seed, *direct, &limits(cfg))?;
            let mut out = ok(&v)?;
            if !v.agrees {
                out.code = EXIT_MISMATCH;
                let direct = v.direct_degree.map_or("-".to_string(), |d| d.to_string());
                out.failure = Some(CliError::new(
                    ErrorKind::Mismatch,
                    format!(
                        "certificate claims degree {}, symbolic {}, direct {direct}",
                        v.claimed_degree, v.symbolic_degree
                    ),
                ));
            }
            Ok(out)
        }
        Command::Diameter { gens, exhaustive } => {
            let gens = generators(cfg, gens.as_ref())?;
            if !exhaustive {
                return ok(&bfs_diameter(&gens, cfg.cap_order, EXEC)?);
            }
            let table =
                enumerate_group(&gens, cfg.cap_order.min(EXHAUSTIVE_LIMIT), EXEC).map_err(|e| {
                    match e {
                        CayleyError::CapExceeded(_) => {
                            CayleyError::OrderTooLarge(EXHAUSTIVE_LIMIT + 1)
                        }
                        other => other,
                    }
                })?;
            let r = exhaustive_group_diameter(&MulTable::from_group(&table)?, EXEC)?;
            ok(&ExhaustiveReport {
                group_order: r.group_order,
                diameter: r.diameter,
                generating_sets: r.generating_sets,
                worst_words: r.worst_set.iter().map(|&i| table.word(i)).collect(),
                worst_set: r.worst_set,
            })
        }
        Command::Cover { gens, elem, kmax } => {
            let gens = generators(cfg, gens.as_ref())?;
            let table = enumerate_group(&gens, cfg.cap_order, EXEC)?;
            let x = matrix_from_json(&load_json::<MatrixJson>(elem, "element")?)?;
            let idx = table.index_of(&x).ok_or(CayleyError::NotInGroup)?;
            let covering_number = class_covering_number(&table, &x, *kmax, EXEC)?;
            ok(&CoverReport {
                group_order: table.order(),
                class_size: conjugacy_class(&table, idx, EXEC).len(),
                kmax: *kmax,
                covering_number,
            })
        }
        Command::Lowdeg { gens, targets } => {
            let gens = generators(cfg, gens.as_ref())?;
            let field = gens[0].field().clone();
            let ts: Vec<PolynomialJson> = load_json(targets, "targets")?;
            let ts = ts
                .iter()
                .map(|t| Ok(poly_from_json_in(&field, t)?))
                .collect::<Result<Vec<_>, CliError>>()?;
            let w = match find_low_degree_word(&gens, &ts, cfg.cap_order, EXEC) {
                Err(CayleyError::NotFoundWithinCap {
                    explored,
                    exhausted: true,
                }) => {
                    return Err(CliError::invalid(format!(
                        "no element of the generated group ({explored} elements) has the target factors"
                    )))
                }
                other => other?,
            };
            ok(&LowDegReport {
                length: w.word.len(),
                word: w.word,
                degree: w.matrix.degree(),
                matrix: matrix_to_json(&w.matrix),
                charpoly: w.charpoly.to_string(),
                charpoly_coeffs: poly_coeffs(&w.charpoly),
                explored: w.explored,
                budget: w.budget.to_string(),
            })
        }
        Command::Bounds { which } => match which {
            BoundsCommand::Compare {
                n,
                q,
                c_main,
                c4,
                c5,
            } => {
                let consts = BoundConstants {
                    c_main: *c_main,
                    c4: *c4,
                    c5: *c5,
                };
                ok(&compare_bounds(*n, *q, consts)?)
            }
            BoundsCommand::Sylow { n, q, p } => ok(&sylow_chain_bound(*n, *q, *p)?),
            BoundsCommand::Erdos { n } => ok(&erdos_report(*n)?),
        },
    }
}
