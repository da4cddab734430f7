//! Word generators selected by name and `key=value` parameters.

use std::collections::BTreeMap;

use realizability_core::bridge::{theorem1_word, MachineList, Theorem1Word};
use realizability_core::words::{
    apply_morphism, champernowne, ultimately_periodic, universal_indexed_word, BalancedBlockMorphism,
    EffectiveMorphism, IndexedWord, InfiniteWord, Letter, PeriodicMorphism,
};
use realizability_core::{Alphabet, Dfa, Word};

use crate::error::CliError;

pub const GENERATORS: [&str; 5] = ["champernowne", "ultper", "universal-indexed", "morphism", "theorem1"];

/// Parses `a=1,b=2`.
pub fn parse_params(text: Option<&str>) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for item in text.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--params: expected key=value, found `{item}`")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// `01` (one symbol per character) or `a|b|c`.
pub fn parse_alphabet(text: &str) -> Result<Alphabet, CliError> {
    Ok(if text.contains('|') {
        Alphabet::new(text.split('|'))?
    } else {
        Alphabet::from_chars(text)?
    })
}

/// A morphism with its realizability oracle, optionally replaced by a
/// product with an explicitly given image language.
pub struct NamedMorphism {
    inner: Box<dyn EffectiveMorphism>,
    image: Option<Dfa>,
}

impl NamedMorphism {
    pub fn builtin(name: &str, alphabet: Option<&Alphabet>) -> Result<Self, CliError> {
        let inner: Box<dyn EffectiveMorphism> = match name {
            "runs" | "runs-of-zeros-and-ones" => Box::new(PeriodicMorphism::runs_of_zeros_and_ones()),
            "balanced" | "balanced-blocks" => Box::new(BalancedBlockMorphism::default()),
            "relabel" => Box::new(PeriodicMorphism::relabel(
                alphabet.cloned().unwrap_or_else(Alphabet::binary),
            )),
            other => {
                return Err(CliError::Usage(format!(
                    "unknown morphism `{other}` (expected runs, balanced or relabel)"
                )))
            }
        };
        Ok(NamedMorphism { inner, image: None })
    }

    /// Answers oracle queries by intersecting with `image` instead.
    pub fn with_image(mut self, image: Dfa) -> Result<Self, CliError> {
        if image.alphabet() != self.inner.target() {
            return Err(realizability_core::Error::AlphabetMismatch.into());
        }
        self.image = Some(image);
        Ok(self)
    }
}

impl EffectiveMorphism for NamedMorphism {
    fn target(&self) -> &Alphabet {
        self.inner.target()
    }

    fn image(&self, letter: Letter) -> realizability_core::Result<Word> {
        self.inner.image(letter)
    }

    fn image_meets(&self, r: &Dfa) -> realizability_core::Result<bool> {
        match &self.image {
            Some(lang) => Ok(!lang.intersect(r)?.is_empty()),
            None => self.inner.image_meets(r),
        }
    }
}

pub enum Generated {
    Symbols(Box<dyn InfiniteWord>),
    Theorem1(Theorem1Word),
    Letters(Box<dyn IndexedWord>),
}

impl Generated {
    pub fn as_word(&self) -> Option<&dyn InfiniteWord> {
        match self {
            Generated::Symbols(w) => Some(w.as_ref()),
            Generated::Theorem1(w) => Some(w),
            Generated::Letters(_) => None,
        }
    }

    /// `W[1, n]`, rendered. Letters print as space-separated indices.
    pub fn render_prefix(&self, n: usize) -> Result<String, CliError> {
        match self.as_word() {
            Some(w) => {
                let p = w.prefix(n)?;
                Ok(if p.is_empty() {
                    String::new()
                } else {
                    w.alphabet().render(&p)
                })
            }
            None => {
                let Generated::Letters(l) = self else { unreachable!() };
                Ok(l.prefix(n)?.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            }
        }
    }
}

/// Builds the named generator. `default_alphabet` is used when the
/// parameters do not name one.
pub fn generate(
    name: &str,
    params: &BTreeMap<String, String>,
    machines: Option<MachineList>,
    default_alphabet: Option<&Alphabet>,
) -> Result<Generated, CliError> {
    let alphabet = match params.get("alphabet") {
        Some(a) => parse_alphabet(a)?,
        None => default_alphabet.cloned().unwrap_or_else(Alphabet::binary),
    };
    let allowed: &[&str] = match name {
        "champernowne" => &["alphabet"],
        "ultper" => &["alphabet", "stem", "period"],
        "universal-indexed" => &[],
        "morphism" => &["alphabet", "morphism"],
        "theorem1" => &["max-stage"],
        other => {
            return Err(CliError::Usage(format!(
                "unknown generator `{other}` (expected one of {})",
                GENERATORS.join(", ")
            )))
        }
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::Usage(format!(
            "--params: `{k}` is not a parameter of `{name}`"
        )));
    }
    Ok(match name {
        "champernowne" => Generated::Symbols(Box::new(champernowne(alphabet))),
        "ultper" => {
            let stem = alphabet.parse_word(params.get("stem").map_or("", String::as_str))?;
            let period = params
                .get("period")
                .ok_or_else(|| CliError::Usage("ultper needs --params period=<word>".into()))?;
            Generated::Symbols(Box::new(ultimately_periodic(
                alphabet.clone(),
                stem,
                alphabet.parse_word(period)?,
            )?))
        }
        "universal-indexed" => Generated::Letters(Box::new(universal_indexed_word())),
        "morphism" => {
            let m = NamedMorphism::builtin(params.get("morphism").map_or("runs", String::as_str), Some(&alphabet))?;
            Generated::Symbols(Box::new(apply_morphism(m, universal_indexed_word())))
        }
        _ => {
            let machines = machines.ok_or_else(|| CliError::Usage("theorem1 needs --machines <file>".into()))?;
            let mut w = theorem1_word(machines);
            if let Some(s) = params.get("max-stage") {
                w = w.with_max_stage(
                    s.parse()
                        .map_err(|_| CliError::Usage(format!("--params: bad max-stage `{s}`")))?,
                );
            }
            Generated::Theorem1(w)
        }
    })
}
