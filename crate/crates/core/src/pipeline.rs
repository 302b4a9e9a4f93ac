//! The end-to-end translation from LTL text to an unambiguous Büchi
//! automaton, with optional self-checking against the lasso oracles.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};
use thiserror::Error;
use web_time::Instant;

use crate::alphabet::{Alphabet, AlphabetError, DEFAULT_AP_CAP};
use crate::degeneralize::{degeneralize, Nba};
use crate::disambiguation::{disambiguation_loop, DisambiguationError, DisambiguationOptions, DisambiguationStats};
use crate::gba::{Tgba, DEFAULT_STATE_CAP};
use crate::hoa::{nba_to_hoa, tgba_to_hoa, HoaOptions};
use crate::ltl::{parse_formula, parse_prefix, simplify, to_pnf, Formula, ParseError};
use crate::oracle::{distinct_lassos, nba_accepts, random_lasso, LassoWord, LtlEvaluator};
use crate::vwaa::{ltl_to_vwaa_over, StateSet, Vwaa, VwaaError};

/// Alphabets up to this many atoms are checked on every lasso with prefix
/// and period of length at most 3; larger ones on a random sample.
pub const EXHAUSTIVE_CHECK_ATOMS: usize = 2;
pub const SAMPLED_CHECK_WORDS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Emit {
    Vwaa,
    Tgba,
    #[default]
    Uba,
}

impl FromStr for Emit {
    type Err = String;

    fn from_str(s: &str) -> Result<Emit, String> {
        match s {
            "vwaa" => Ok(Emit::Vwaa),
            "tgba" => Ok(Emit::Tgba),
            "uba" => Ok(Emit::Uba),
            _ => Err(format!("unknown output `{s}`, expected vwaa, tgba or uba")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Read formulas in LBT prefix syntax.
    pub prefix: bool,
    /// Apply the fairness rewrite rules on top of the baseline simplifier.
    pub rewrites: bool,
    pub heuristic: bool,
    pub suspension: bool,
    pub eager_complements: bool,
    pub emit: Emit,
    pub max_iterations: Option<usize>,
    pub check: bool,
    pub seed: u64,
    pub ap_cap: usize,
    pub state_cap: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            prefix: false,
            rewrites: true,
            heuristic: true,
            suspension: true,
            eager_complements: false,
            emit: Emit::Uba,
            max_iterations: None,
            check: false,
            seed: 0,
            ap_cap: DEFAULT_AP_CAP,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Vwaa(#[from] VwaaError),
    #[error(transparent)]
    Disambiguation(#[from] DisambiguationError),
    #[error("check failed on {word}: formula {}, automaton {}", verdict(*.expected), verdict(!*.expected))]
    CheckFailed { word: String, expected: bool },
    #[error("check failed: the automaton is ambiguous")]
    Ambiguous,
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "accepts"
    } else {
        "rejects"
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Timings {
    pub simplify: Duration,
    pub vwaa: Duration,
    pub disambiguation: Duration,
    pub degeneralize: Duration,
}

/// Everything produced for one formula.
pub struct Translation {
    /// The input in positive normal form.
    pub input: Formula,
    pub simplified: Formula,
    pub initial_vwaa_states: usize,
    pub vwaa: Vwaa,
    pub tgba: Tgba<StateSet>,
    pub nba: Nba,
    pub stats: DisambiguationStats,
    pub timings: Timings,
}

/// Outcome of a successful self-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckReport {
    pub words: usize,
    pub exhaustive: bool,
}

pub fn parse_input(text: &str, prefix: bool) -> Result<Formula, ParseError> {
    if prefix {
        parse_prefix(text)
    } else {
        parse_formula(text)
    }
}

/// Translates `f` over the atoms occurring in it.
pub fn translate(f: Formula, config: &PipelineConfig) -> Result<Translation, PipelineError> {
    let alphabet = Alphabet::of_formula(f, config.ap_cap)?;
    translate_over(f, alphabet, config)
}

/// Translates `f` over a fixed alphabet, which must contain the atoms of
/// `f` and may contain others.
pub fn translate_over(f: Formula, alphabet: Alphabet, config: &PipelineConfig) -> Result<Translation, PipelineError> {
    let input = to_pnf(f);
    let clock = Instant::now();
    let simplified = simplify(input, config.rewrites);
    let t_simplify = clock.elapsed();

    let clock = Instant::now();
    let a0 = ltl_to_vwaa_over(simplified, alphabet, config.suspension)?;
    let t_vwaa = clock.elapsed();

    let clock = Instant::now();
    let out = disambiguation_loop(
        &a0,
        DisambiguationOptions {
            heuristic: config.heuristic,
            eager_complements: config.eager_complements,
            max_iterations: config.max_iterations,
            state_cap: config.state_cap,
        },
    )?;
    let t_dis = clock.elapsed();

    let clock = Instant::now();
    let vwaa = out.vwaa;
    let nba = degeneralize(&out.tgba, |c| config_name(&vwaa, c));
    let t_degen = clock.elapsed();

    Ok(Translation {
        input,
        simplified,
        initial_vwaa_states: a0.len(),
        vwaa,
        tgba: out.tgba,
        nba,
        stats: out.stats,
        timings: Timings {
            simplify: t_simplify,
            vwaa: t_vwaa,
            disambiguation: t_dis,
            degeneralize: t_degen,
        },
    })
}

/// A configuration rendered as `{φ, ψ}` over state names.
pub fn config_name(a: &Vwaa, c: &StateSet) -> String {
    let names: Vec<String> = c.iter().map(|q| a.state(q).name().to_string()).collect();
    format!("{{{}}}", names.join(", "))
}

impl Translation {
    pub fn render(&self, emit: Emit) -> String {
        let opts = HoaOptions {
            name: Some(self.input.to_string()),
            unambiguous: true,
        };
        match emit {
            Emit::Vwaa => self.vwaa.to_string(),
            Emit::Tgba => tgba_to_hoa(&self.tgba, |c| config_name(&self.vwaa, c), &opts),
            Emit::Uba => nba_to_hoa(&self.nba, &opts),
        }
    }

    /// Compares the automaton with the input formula on lasso words and
    /// checks that it is unambiguous. Returns the first counterexample.
    pub fn check(&self, seed: u64) -> Result<CheckReport, PipelineError> {
        let alphabet = &self.nba.alphabet;
        let letters = alphabet.num_letters();
        let exhaustive = alphabet.atoms().len() <= EXHAUSTIVE_CHECK_ATOMS;
        let words: Vec<LassoWord> = if exhaustive {
            distinct_lassos(letters, 3, 3)
        } else {
            let mut rng = StdRng::seed_from_u64(seed);
            (0..SAMPLED_CHECK_WORDS).map(|_| random_lasso(&mut rng, letters, 4, 4)).collect()
        };
        let eval = LtlEvaluator::new(self.input, alphabet);
        for w in &words {
            let expected = eval.holds(w);
            if nba_accepts(&self.nba, w) != expected {
                return Err(PipelineError::CheckFailed {
                    word: w.display(alphabet).to_string(),
                    expected,
                });
            }
        }
        if !crate::oracle::nba_unambiguous(&self.nba) {
            return Err(PipelineError::Ambiguous);
        }
        Ok(CheckReport {
            words: words.len(),
            exhaustive,
        })
    }

    /// One JSON object per stage, then one per disambiguation iteration.
    pub fn stats_json(&self) -> Vec<Value> {
        let ms = |d: Duration| d.as_secs_f64() * 1000.0;
        let mut out = vec![
            json!({
                "stage": "simplify",
                "input": self.input.to_string(),
                "input_size": self.input.size(),
                "output": self.simplified.to_string(),
                "output_size": self.simplified.size(),
                "ms": ms(self.timings.simplify),
            }),
            json!({
                "stage": "vwaa",
                "states": self.initial_vwaa_states,
                "ms": ms(self.timings.vwaa),
            }),
        ];
        for r in &self.stats.records {
            let mut v = serde_json::to_value(r).unwrap_or(Value::Null);
            if let Value::Object(m) = &mut v {
                m.insert("stage".into(), json!("iteration"));
            }
            out.push(v);
        }
        out.push(json!({
            "stage": "disambiguation",
            "iterations": self.stats.iterations,
            "vwaa_states": self.vwaa.len(),
            "tgba_states": self.tgba.len(),
            "tgba_edges": self.tgba.num_edges(),
            "acceptance_sets": self.tgba.num_sets,
            "ms": ms(self.timings.disambiguation),
        }));
        out.push(json!({
            "stage": "uba",
            "states": self.nba.len,
            "edges": self.nba.num_edges(),
            "ms": ms(self.timings.degeneralize),
        }));
        out
    }
}

/// Result of running the whole pipeline on one line of input.
pub struct Output {
    pub text: String,
    pub stats: Vec<Value>,
    pub check: Option<CheckReport>,
}

impl fmt::Debug for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Output").field("text", &self.text).finish_non_exhaustive()
    }
}

pub fn run(text: &str, config: &PipelineConfig) -> Result<Output, PipelineError> {
    let f = parse_input(text, config.prefix)?;
    let t = translate(f, config)?;
    let mut stats = t.stats_json();
    let check = if config.check {
        let report = t.check(config.seed)?;
        stats.push(json!({
            "stage": "check",
            "words": report.words,
            "exhaustive": report.exhaustive,
            "unambiguous": true,
        }));
        Some(report)
    } else {
        None
    };
    Ok(Output {
        text: t.render(config.emit),
        stats,
        check,
    })
}
