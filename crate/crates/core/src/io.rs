//! JSON encodings of games, weights and trading transforms.
//!
//! Three game forms are accepted:
//!
//! * explicit: `{"players": ["a", "b", ...] | n, "min_winning": [["a","b"], ...]}`
//! * profile: `{"levels": [5, 10], "shift_min": [[5, 4]]}` (optional `"players"` labels)
//! * weighted: `{"quota": "39", "weights": ["7", ..., "1"]}` (optional `"players"` labels)
//!
//! Rationals are written as strings `"a/b"`, integer strings, or JSON integers;
//! decimal strings such as `"0.25"` are also accepted on input.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::lp::Rational;
use crate::profile::{from_profile, CompleteProfile};
use crate::trade::TradingTransform;
use crate::weights::WeightedRepresentation;

/// A game with a display label for every player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGame {
    pub game: SimpleGame,
    pub labels: Vec<String>,
}

impl LabeledGame {
    pub fn new(game: SimpleGame) -> Self {
        let labels = default_labels(game.n());
        LabeledGame { game, labels }
    }

    pub fn with_labels(game: SimpleGame, labels: Vec<String>) -> Result<Self> {
        check_labels(&labels, game.n())?;
        Ok(LabeledGame { game, labels })
    }

    pub fn coalition_labels(&self, c: Coalition) -> Vec<String> {
        c.members().map(|p| self.labels[p].clone()).collect()
    }

    /// Parses a coalition given as a list of labels or indices.
    pub fn parse_coalition(&self, v: &Value) -> Result<Coalition> {
        let index: HashMap<&str, usize> = self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        parse_members(v, &index, self.game.n())
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_labels(labels: &[String], n: usize) -> Result<()> {
    if labels.len() != n {
        return Err(Error::Parse(format!("{} labels for {n} players", labels.len())));
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
        return Err(Error::Parse(format!("duplicate label {dup}")));
    }
    Ok(())
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| parse_err(format!("{n} is not an integer; write fractions as \"a/b\""))),
        Value::String(s) => parse_rational_str(s),
        other => Err(parse_err(format!("expected a rational, got {other}"))),
    }
}

pub fn parse_rational_str(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || parse_err(format!("invalid rational {s:?}"));
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once('/') {
        let d = int(b)?;
        if d.is_zero() {
            return Err(parse_err("zero denominator"));
        }
        return Ok(Rational::new(int(a)?, d));
    }
    if let Some((a, b)) = s.split_once('.') {
        if b.is_empty() || !b.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = a.trim_start().starts_with('-');
        let whole = if a.is_empty() || a == "-" {
            BigInt::zero()
        } else {
            int(a)?
        };
        let scale = num_traits::pow(BigInt::from(10), b.len());
        let frac = Rational::new(int(b)?, scale);
        let w = Rational::from_integer(whole);
        return Ok(if negative { w - frac } else { w + frac });
    }
    Ok(Rational::from_integer(int(s)?))
}

pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_members(v: &Value, index: &HashMap<&str, usize>, n: usize) -> Result<Coalition> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(format!("expected a list of players, got {v}")))?;
    let mut c = Coalition::EMPTY;
    for p in arr {
        let i = match p {
            Value::String(s) => match index.get(s.as_str()) {
                Some(&i) => i,
                None => s
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i < n)
                    .ok_or_else(|| parse_err(format!("unknown player {s:?}")))?,
            },
            Value::Number(x) => x
                .as_u64()
                .map(|i| i as usize)
                .filter(|&i| i < n)
                .ok_or_else(|| parse_err(format!("player index {x} out of range")))?,
            other => return Err(parse_err(format!("invalid player {other}"))),
        };
        c = c.with(i);
    }
    Ok(c)
}

fn parse_labels(obj: &Map<String, Value>, n: Option<usize>) -> Result<Option<Vec<String>>> {
    match obj.get("players") {
        None => Ok(None),
        Some(Value::Number(x)) => {
            let k = x
                .as_u64()
                .ok_or_else(|| parse_err("player count must be a positive integer"))? as usize;
            if n.is_some_and(|n| n != k) {
                return Err(parse_err(format!("players = {k} does not match the game size")));
            }
            Ok(Some(default_labels(k)))
        }
        Some(Value::Array(a)) => {
            let labels: Vec<String> = a
                .iter()
                .map(|v| match v {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(x) => Ok(x.to_string()),
                    other => Err(parse_err(format!("invalid label {other}"))),
                })
                .collect::<Result<_>>()?;
            if let Some(n) = n {
                check_labels(&labels, n)?;
            }
            Ok(Some(labels))
        }
        Some(other) => Err(parse_err(format!("invalid players field {other}"))),
    }
}

fn usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be a list")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|i| i as usize)
                .ok_or_else(|| parse_err(format!("{what} entries must be non-negative integers")))
        })
        .collect()
}

/// Parses any of the three game forms.
pub fn parse_game(v: &Value) -> Result<LabeledGame> {
    let obj = v.as_object().ok_or_else(|| parse_err("a game must be a JSON object"))?;
    if let Some(mw) = obj.get("min_winning") {
        let labels = parse_labels(obj, None)?.ok_or_else(|| parse_err("explicit form needs \"players\""))?;
        check_labels(&labels, labels.len())?;
        let n = labels.len();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let sets = mw
            .as_array()
            .ok_or_else(|| parse_err("min_winning must be a list"))?
            .iter()
            .map(|c| parse_members(c, &index, n))
            .collect::<Result<Vec<_>>>()?;
        let game = SimpleGame::new(n, sets)?;
        return LabeledGame::with_labels(game, labels);
    }
    if let (Some(levels), Some(sm)) = (obj.get("levels"), obj.get("shift_min")) {
        let level_sizes = usize_list(levels, "levels")?;
        let shift_min = sm
            .as_array()
            .ok_or_else(|| parse_err("shift_min must be a list"))?
            .iter()
            .map(|p| usize_list(p, "shift_min profile"))
            .collect::<Result<Vec<_>>>()?;
        let game = from_profile(&CompleteProfile { level_sizes, shift_min })?;
        let labels = parse_labels(obj, Some(game.n()))?.unwrap_or_else(|| default_labels(game.n()));
        return LabeledGame::with_labels(game, labels);
    }
    if let (Some(q), Some(w)) = (obj.get("quota"), obj.get("weights")) {
        let rep = parse_weighted(q, w)?;
        let game = rep.to_game()?;
        let labels = parse_labels(obj, Some(game.n()))?.unwrap_or_else(|| default_labels(game.n()));
        return LabeledGame::with_labels(game, labels);
    }
    Err(parse_err(
        "unrecognized game format: expected min_winning, levels/shift_min or quota/weights",
    ))
}

pub fn parse_weighted(q: &Value, w: &Value) -> Result<WeightedRepresentation> {
    let quota = parse_rational(q)?;
    let weights = w
        .as_array()
        .ok_or_else(|| parse_err("weights must be a list"))?
        .iter()
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    if weights.is_empty() {
        return Err(parse_err("weights must be nonempty"));
    }
    Ok(WeightedRepresentation::new(quota, weights))
}

pub fn parse_game_str(s: &str) -> Result<LabeledGame> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
    parse_game(&v)
}

/// Explicit form.
pub fn game_to_json(g: &LabeledGame) -> Value {
    json!({
        "players": g.labels,
        "min_winning": g.game.min_winning().iter().map(|&c| g.coalition_labels(c)).collect::<Vec<_>>(),
    })
}

pub fn weights_to_json(rep: &WeightedRepresentation) -> Value {
    let mut v = json!({
        "quota": rational_to_string(&rep.quota),
        "weights": rep.weights.iter().map(rational_to_string).collect::<Vec<_>>(),
    });
    if let Some(i) = &rep.integer_form {
        v["integer_form"] = json!({
            "quota": i.quota.to_string(),
            "weights": i.weights.iter().map(BigInt::to_string).collect::<Vec<_>>(),
        });
    }
    v
}

pub fn transform_to_json(t: &TradingTransform, labels: &[String]) -> Value {
    let side = |s: &[Coalition]| -> Vec<Vec<String>> {
        s.iter()
            .map(|c| c.members().map(|p| labels[p].clone()).collect())
            .collect()
    };
    json!({ "x": side(&t.x), "y": side(&t.y) })
}

pub fn parse_transform(v: &Value, g: &LabeledGame) -> Result<TradingTransform> {
    let side = |key: &str| -> Result<Vec<Coalition>> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err(format!("transform needs a \"{key}\" list")))?
            .iter()
            .map(|c| g.parse_coalition(c))
            .collect()
    };
    Ok(TradingTransform::new(side("x")?, side("y")?))
}

/// Canonical text id of an antichain: `n:` followed by the sorted member masks.
pub fn game_id(g: &SimpleGame) -> String {
    let masks: Vec<String> = g.min_winning().iter().map(|c| c.bits().to_string()).collect();
    format!("{}:{}", g.n(), masks.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_round_trip() {
        let text = r#"{"players": ["a","b","c"], "min_winning": [["a","b"],["c"]]}"#;
        let g = parse_game_str(text).unwrap();
        assert_eq!(g.game.n(), 3);
        let back = parse_game(&game_to_json(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn weighted_form_with_fractions() {
        let g = parse_game_str(r#"{"quota": "3/2", "weights": [1, "1/2", "0.5"]}"#).unwrap();
        assert!(g.game.wins(Coalition::from_players([0, 1])));
        assert!(!g.game.wins(Coalition::from_players([1, 2])));
    }

    #[test]
    fn profile_form() {
        let g = parse_game_str(r#"{"levels": [5, 10], "shift_min": [[5, 4]]}"#).unwrap();
        assert_eq!(g.game.n(), 15);
        assert!(g.game.min_winning().iter().all(|c| c.len() == 9));
    }

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational_str("-1.25").unwrap(),
            Rational::new((-5).into(), 4.into())
        );
        assert_eq!(rational_to_string(&Rational::new(6.into(), 4.into())), "3/2");
        assert!(parse_rational_str("1/0").is_err());
        assert!(parse_rational_str("x").is_err());
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_game_str(r#"{"players": ["a","a"], "min_winning": [["a"]]}"#).is_err());
        assert!(parse_game_str(r#"{"players": 2, "min_winning": [[0,1],[0]]}"#).is_err());
        assert!(parse_game_str(r#"{"foo": 1}"#).is_err());
    }
}
