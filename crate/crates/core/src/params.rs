//! Parameter points: the coefficients `t_{i,j;p,q}` of the polynomials `Q_ij`.

use std::collections::{BTreeMap, BTreeSet};

use klr_exact::{Field, Poly, Rat, RatFunc};
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanDatum, CartanError, Vertex};
use crate::expr::{self, ExprError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("malformed parameter key `{0}` (expected t[i,j;p,q])")]
    BadKey(String),
    #[error("parameter key `{0}` is not in the exponent set for this Cartan datum")]
    NotInSupport(String),
    #[error("parameter `{0}` must be invertible but is zero")]
    NotInvertible(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("denominator of `{0}` vanishes at the requested point")]
    Pole(String),
    #[error("malformed assignment `{0}` (expected name=value)")]
    BadAssignment(String),
    #[error("parameter `{0}` given twice")]
    Duplicate(String),
}

/// Index of a coefficient `t_{i,j;p,q}`, normalized to `i < j` using the
/// symmetry `t_{i,j;p,q} = t_{j,i;q,p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamKey {
    pub i: Vertex,
    pub j: Vertex,
    pub p: u32,
    pub q: u32,
}

impl ParamKey {
    pub fn new(i: Vertex, j: Vertex, p: u32, q: u32) -> Self {
        if i <= j {
            ParamKey { i, j, p, q }
        } else {
            ParamKey { i: j, j: i, p: q, q: p }
        }
    }

    pub fn display(&self, datum: &CartanDatum) -> String {
        format!("t[{},{};{},{}]", datum.label(self.i), datum.label(self.j), self.p, self.q)
    }

    pub fn parse(s: &str, datum: &CartanDatum) -> Result<Self, ParamError> {
        let bad = || ParamError::BadKey(s.to_string());
        let inner = s.trim().strip_prefix("t[").and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let (ij, pq) = inner.split_once(';').ok_or_else(bad)?;
        let (i, j) = ij.split_once(',').ok_or_else(bad)?;
        let (p, q) = pq.split_once(',').ok_or_else(bad)?;
        let i = datum.vertex(i.trim())?;
        let j = datum.vertex(j.trim())?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let q: u32 = q.trim().parse().map_err(|_| bad())?;
        if i == j {
            return Err(bad());
        }
        Ok(ParamKey::new(i, j, p, q))
    }
}

/// An assignment of values to every `t_{i,j;p,q}`.
///
/// Values are rational functions in a finite list of named symbols; a point
/// with no symbols is a rational point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint {
    symbols: Vec<String>,
    values: BTreeMap<ParamKey, RatFunc>,
}

/// Value of one parameter in a configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

/// The on-disk configuration: a Cartan datum plus parameter values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub index: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    #[serde(default)]
    pub params: BTreeMap<String, ParamValue>,
}

impl Config {
    pub fn load(datum_and_point: &str) -> Result<(CartanDatum, ParamPoint), String> {
        let cfg: Config = toml::from_str(datum_and_point).map_err(|e| e.to_string())?;
        let datum = CartanDatum::new(cfg.index, cfg.cartan, cfg.symmetrizer).map_err(|e| e.to_string())?;
        let table: BTreeMap<String, String> = cfg
            .params
            .into_iter()
            .map(|(k, v)| {
                let v = match v {
                    ParamValue::Int(n) => n.to_string(),
                    ParamValue::Text(s) => s,
                };
                (k, v)
            })
            .collect();
        let point = ParamPoint::from_table(&datum, &table).map_err(|e| e.to_string())?;
        Ok((datum, point))
    }

    pub fn from_parts(datum: &CartanDatum, point: &ParamPoint) -> Config {
        Config {
            index: datum.labels().to_vec(),
            cartan: datum.matrix().to_vec(),
            symmetrizer: datum.symmetrizer().to_vec(),
            params: point.to_table(datum).into_iter().map(|(k, v)| (k, ParamValue::Text(v))).collect(),
        }
    }
}

impl ParamPoint {
    fn keys(datum: &CartanDatum) -> Vec<ParamKey> {
        let mut keys = Vec::new();
        for i in datum.vertices() {
            for j in (i + 1)..datum.rank() {
                for (p, q) in datum.exponent_set(i, j) {
                    keys.push(ParamKey::new(i, j, p, q));
                }
            }
        }
        keys
    }

    /// Every coefficient is its own independent symbol `t[i,j;p,q]`.
    pub fn generic(datum: &CartanDatum) -> Self {
        let keys = Self::keys(datum);
        let symbols: Vec<String> = keys.iter().map(|k| k.display(datum)).collect();
        let mut order: Vec<usize> = (0..symbols.len()).collect();
        order.sort_by(|&a, &b| symbols[a].cmp(&symbols[b]));
        let mut sorted = vec![0; symbols.len()];
        for (pos, &k) in order.iter().enumerate() {
            sorted[k] = pos;
        }
        let values = keys.iter().enumerate().map(|(n, k)| (*k, RatFunc::var(sorted[n]))).collect();
        let symbols = order.into_iter().map(|k| symbols[k].clone()).collect();
        ParamPoint { symbols, values }
    }

    /// Builds a point from `t[i,j;p,q] -> value` entries. Values are
    /// expressions in free symbols or the word `generic`; missing keys are
    /// treated as `generic`.
    pub fn from_table(datum: &CartanDatum, table: &BTreeMap<String, String>) -> Result<Self, ParamError> {
        let keys = Self::keys(datum);
        let mut given: BTreeMap<ParamKey, String> = BTreeMap::new();
        for (k, v) in table {
            let key = ParamKey::parse(k, datum)?;
            if !keys.contains(&key) {
                return Err(ParamError::NotInSupport(k.clone()));
            }
            if given.insert(key, v.trim().to_string()).is_some() {
                return Err(ParamError::Duplicate(k.clone()));
            }
        }
        let mut sources: BTreeMap<ParamKey, String> = BTreeMap::new();
        let mut symbols = BTreeSet::new();
        for key in &keys {
            match given.get(key).map(String::as_str) {
                Some("generic") | None => {
                    let name = key.display(datum);
                    symbols.insert(name.clone());
                    sources.insert(*key, name);
                }
                Some(src) => {
                    symbols.extend(expr::symbols_in(src)?);
                    sources.insert(*key, src.to_string());
                }
            }
        }
        let symbols: Vec<String> = symbols.into_iter().collect();
        let mut values = BTreeMap::new();
        for (key, src) in sources {
            let v = match symbols.iter().position(|s| *s == src) {
                Some(k) => RatFunc::var(k),
                None => expr::parse(&src, &symbols)?,
            };
            values.insert(key, v);
        }
        let point = ParamPoint { symbols, values };
        point.validate(datum)?;
        Ok(point)
    }

    /// The family `Q_01 = u^2 + a u v + v^2` on affine A1.
    pub fn a1_affine_family() -> Self {
        let d = CartanDatum::a1_affine();
        let table = [("t[0,1;2,0]", "1"), ("t[0,1;1,1]", "a"), ("t[0,1;0,2]", "1")];
        Self::from_table(&d, &table.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect())
            .expect("valid preset")
    }

    /// The family `Q_{i,i+1} = a_i u + b_{i+1} v` (indices mod 3) on affine A2.
    pub fn a2_affine_family() -> Self {
        let d = CartanDatum::a2_affine();
        let table = [
            ("t[0,1;1,0]", "a0"),
            ("t[0,1;0,1]", "b1"),
            ("t[1,2;1,0]", "a1"),
            ("t[1,2;0,1]", "b2"),
            ("t[2,0;1,0]", "a2"),
            ("t[2,0;0,1]", "b0"),
        ];
        Self::from_table(&d, &table.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect())
            .expect("valid preset")
    }

    /// `Q_ij = (u - v)^{-a_ij}` for `i < j`, which needs a symmetric matrix to
    /// lie in the exponent sets.
    pub fn c0(datum: &CartanDatum) -> Option<Self> {
        if !datum.is_symmetric() {
            return None;
        }
        let mut values = BTreeMap::new();
        for key in Self::keys(datum) {
            let n = -datum.a(key.i, key.j) as u32;
            // coefficient of u^p v^q in (u - v)^n
            let binom = (0..key.q)
                .fold(Rat::one(), |acc, k| acc.mul(&Rat::from_int((n - k) as i64)).div(&Rat::from_int(k as i64 + 1)));
            let sign = if key.q % 2 == 1 { binom.neg() } else { binom };
            values.insert(key, RatFunc::constant(sign));
        }
        Some(ParamPoint { symbols: Vec::new(), values })
    }

    /// Default point for a built-in datum: the one-parameter family on affine
    /// A1, the six-parameter family on affine A2, fully generic otherwise.
    pub fn preset(name: &str, datum: &CartanDatum) -> Self {
        match name {
            "a1affine" => Self::a1_affine_family(),
            "a2affine" => Self::a2_affine_family(),
            _ => Self::generic(datum),
        }
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn values(&self) -> &BTreeMap<ParamKey, RatFunc> {
        &self.values
    }

    pub fn is_rational(&self) -> bool {
        self.values.values().all(|v| v.as_constant().is_some())
    }

    pub fn value(&self, key: &ParamKey) -> RatFunc {
        self.values.get(key).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Terms `(p, q, t_{i,j;p,q})` of `Q_ij(u, v)` for the ordered pair
    /// `(i, j)`; empty when `i == j`.
    pub fn q_terms(&self, i: Vertex, j: Vertex) -> Vec<(u32, u32, RatFunc)> {
        if i == j {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (key, v) in &self.values {
            if v.is_zero() {
                continue;
            }
            if key.i == i && key.j == j {
                out.push((key.p, key.q, v.clone()));
            } else if key.i == j && key.j == i {
                out.push((key.q, key.p, v.clone()));
            }
        }
        out.sort_by_key(|t| (t.0, t.1));
        out
    }

    pub fn validate(&self, datum: &CartanDatum) -> Result<(), ParamError> {
        for i in datum.vertices() {
            for j in datum.vertices() {
                if i == j {
                    continue;
                }
                let key = ParamKey::new(i, j, (-datum.a(i, j)) as u32, 0);
                if self.value(&key).is_zero() {
                    return Err(ParamError::NotInvertible(key.display(datum)));
                }
            }
        }
        Ok(())
    }

    /// Substitutes rational values for some symbols; the others remain free.
    pub fn specialize(&self, datum: &CartanDatum, assign: &BTreeMap<String, Rat>) -> Result<Self, ParamError> {
        let mut by_index = BTreeMap::new();
        for (name, v) in assign {
            let k =
                self.symbols.iter().position(|s| s == name).ok_or_else(|| ParamError::UnknownSymbol(name.clone()))?;
            by_index.insert(k, v.clone());
        }
        let remaining: Vec<usize> = (0..self.symbols.len()).filter(|k| !by_index.contains_key(k)).collect();
        let rename: BTreeMap<usize, Poly> =
            remaining.iter().enumerate().map(|(new, &old)| (old, Poly::var(new))).collect();
        let mut values = BTreeMap::new();
        for (key, v) in &self.values {
            let s = v.substitute(&by_index).map_err(|_| ParamError::Pole(key.display(datum)))?;
            let s = RatFunc::new(s.num().compose(&rename), s.den().compose(&rename));
            values.insert(*key, s);
        }
        let symbols = remaining.iter().map(|&k| self.symbols[k].clone()).collect();
        let point = ParamPoint { symbols, values };
        point.validate(datum)?;
        Ok(point)
    }

    pub fn to_table(&self, datum: &CartanDatum) -> BTreeMap<String, String> {
        self.values.iter().map(|(k, v)| (k.display(datum), v.fmt_with(&self.symbols))).collect()
    }

    pub fn describe(&self, datum: &CartanDatum) -> String {
        let parts: Vec<String> = self.to_table(datum).into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.join(", ")
    }
}

/// Parses `a=2, b=-1/3` (separators `,` or `;`) into rational assignments.
pub fn parse_assignments(s: &str) -> Result<BTreeMap<String, Rat>, ParamError> {
    let mut out = BTreeMap::new();
    for part in s.split([',', ';']).map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| ParamError::BadAssignment(part.to_string()))?;
        let value: Rat = value.trim().parse().map_err(|_| ParamError::BadAssignment(part.to_string()))?;
        if out.insert(name.trim().to_string(), value).is_some() {
            return Err(ParamError::Duplicate(name.trim().to_string()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_point_has_one_symbol_per_coefficient() {
        let d = CartanDatum::a1_affine();
        let p = ParamPoint::generic(&d);
        assert_eq!(p.symbols().len(), 3);
        assert_eq!(p.q_terms(0, 1).len(), 3);
        assert!(p.q_terms(0, 0).is_empty());
        assert!(!p.is_rational());
    }

    #[test]
    fn symmetry_of_coefficients() {
        let p = ParamPoint::a2_affine_family();
        let syms = p.symbols().to_vec();
        let show = |terms: Vec<(u32, u32, RatFunc)>| -> Vec<(u32, u32, String)> {
            terms.into_iter().map(|(a, b, v)| (a, b, v.fmt_with(&syms))).collect()
        };
        assert_eq!(show(p.q_terms(0, 1)), vec![(0, 1, "b1".into()), (1, 0, "a0".into())]);
        assert_eq!(show(p.q_terms(2, 0)), vec![(0, 1, "b0".into()), (1, 0, "a2".into())]);
        assert_eq!(show(p.q_terms(0, 2)), vec![(0, 1, "a2".into()), (1, 0, "b0".into())]);
    }

    #[test]
    fn table_parsing_and_validation() {
        let d = CartanDatum::a1_affine();
        let table = |entries: &[(&str, &str)]| -> BTreeMap<String, String> {
            entries.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
        };
        let p = ParamPoint::from_table(&d, &table(&[("t[0,1;2,0]", "1"), ("t[1,0;1,1]", "2"), ("t[0,1;0,2]", "1")]))
            .unwrap();
        assert!(p.is_rational());
        assert_eq!(p.value(&ParamKey::new(0, 1, 1, 1)), RatFunc::from_int(2));
        assert!(matches!(
            ParamPoint::from_table(&d, &table(&[("t[0,1;2,0]", "0")])),
            Err(ParamError::NotInvertible(_))
        ));
        assert!(matches!(ParamPoint::from_table(&d, &table(&[("t[0,1;3,0]", "1")])), Err(ParamError::NotInSupport(_))));
        assert!(matches!(ParamPoint::from_table(&d, &table(&[("s[0,1;2,0]", "1")])), Err(ParamError::BadKey(_))));
        let partial = ParamPoint::from_table(&d, &table(&[("t[0,1;1,1]", "c^2")])).unwrap();
        assert_eq!(partial.symbols().len(), 3);
    }

    #[test]
    fn specialization_renames_remaining_symbols() {
        let d = CartanDatum::a2_affine();
        let p = ParamPoint::a2_affine_family();
        let assign = parse_assignments("a0=1, a1=2; b0=3").unwrap();
        let s = p.specialize(&d, &assign).unwrap();
        assert_eq!(s.symbols(), &["a2".to_string(), "b1".into(), "b2".into()]);
        assert_eq!(s.value(&ParamKey::new(1, 2, 1, 0)), RatFunc::from_int(2));
        assert_eq!(s.value(&ParamKey::new(0, 2, 0, 1)), RatFunc::var(0));
        assert!(matches!(p.specialize(&d, &parse_assignments("a0=0").unwrap()), Err(ParamError::NotInvertible(_))));
        assert!(matches!(p.specialize(&d, &parse_assignments("z=0").unwrap()), Err(ParamError::UnknownSymbol(_))));
    }

    #[test]
    fn c0_point_matches_binomial_expansion() {
        let p = ParamPoint::c0(&CartanDatum::a1_affine()).unwrap();
        let terms: Vec<(u32, u32, String)> =
            p.q_terms(0, 1).into_iter().map(|(a, b, v)| (a, b, v.to_string())).collect();
        assert_eq!(terms, vec![(0, 2, "1".into()), (1, 1, "-2".into()), (2, 0, "1".into())]);
    }

    #[test]
    fn config_round_trip() {
        let src = r#"
index = ["0", "1"]
cartan = [[2, -2], [-2, 2]]
symmetrizer = [1, 1]

[params]
"t[0,1;2,0]" = 1
"t[0,1;1,1]" = "a"
"t[0,1;0,2]" = "1"
"#;
        let (d, p) = Config::load(src).unwrap();
        assert_eq!(d, CartanDatum::a1_affine());
        assert_eq!(p, ParamPoint::a1_affine_family());
        let text = toml::to_string(&Config::from_parts(&d, &p)).unwrap();
        let (d2, p2) = Config::load(&text).unwrap();
        assert_eq!((d2, p2), (d, p));
    }
}
