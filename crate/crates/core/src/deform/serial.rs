//! JSON forms of tensors and points. Numbers are decimal strings; entries are
//! sorted lexicographically by `(mono, slot)`.
//!
//! ```json
//! {"n": 4, "d": 2, "kind": "partial",
//!  "entries": [{"mono": [0,1,0,0,0], "slot": 0, "num": "-1", "den": "1"}]}
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::point::PointOnX;
use super::tensor::{MultiIndex, PartialSymTensor, SymTensor};
use crate::error::{Error, Result};
use crate::poly::{QuotElem, UPoly};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Number {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for Number {
    fn from(r: &Rational) -> Self {
        Number { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl Number {
    pub fn to_rational(&self) -> Result<Rational> {
        let parse = |s: &str| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Format(format!("'{s}' is not a decimal integer")))
        };
        let den = parse(&self.den)?;
        if den.is_zero() {
            return Err(Error::Format("zero denominator".into()));
        }
        Ok(Rational::new(parse(&self.num)?, den))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub mono: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot: Option<usize>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sym,
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub n: usize,
    pub d: usize,
    pub kind: Kind,
    pub entries: Vec<EntryJson>,
}

fn entry(mono: &MultiIndex, slot: Option<usize>, c: &Rational) -> EntryJson {
    let Number { num, den } = Number::from(c);
    EntryJson { mono: mono.exponents().to_vec(), slot, num, den }
}

impl From<&SymTensor> for TensorJson {
    fn from(t: &SymTensor) -> Self {
        TensorJson {
            n: t.n(),
            d: t.d(),
            kind: Kind::Sym,
            entries: t.entries().iter().map(|(m, c)| entry(m, None, c)).collect(),
        }
    }
}

impl From<&PartialSymTensor> for TensorJson {
    fn from(t: &PartialSymTensor) -> Self {
        TensorJson {
            n: t.n(),
            d: t.d(),
            kind: Kind::Partial,
            entries: t.entries().iter().map(|((m, s), c)| entry(m, Some(*s), c)).collect(),
        }
    }
}

fn coeff(e: &EntryJson) -> Result<Rational> {
    Number { num: e.num.clone(), den: e.den.clone() }.to_rational()
}

impl TensorJson {
    pub fn to_sym(&self) -> Result<SymTensor> {
        if self.kind != Kind::Sym {
            return Err(Error::Format("expected a tensor of kind 'sym'".into()));
        }
        let entries = self
            .entries
            .iter()
            .map(|e| {
                if e.slot.is_some() {
                    return Err(Error::Format("symmetric entries carry no slot".into()));
                }
                Ok((MultiIndex::new(e.mono.clone()), coeff(e)?))
            })
            .collect::<Result<Vec<_>>>()?;
        SymTensor::from_entries(self.n, self.d, entries)
    }

    pub fn to_partial(&self) -> Result<PartialSymTensor> {
        if self.kind != Kind::Partial {
            return Err(Error::Format("expected a tensor of kind 'partial'".into()));
        }
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let slot = e.slot.ok_or_else(|| Error::Format("partial entries need a slot".into()))?;
                Ok(((MultiIndex::new(e.mono.clone()), slot), coeff(e)?))
            })
            .collect::<Result<Vec<_>>>()?;
        PartialSymTensor::from_entries(self.n, self.d, entries)
    }
}

pub fn sym_to_json(t: &SymTensor) -> Result<String> {
    Ok(serde_json::to_string_pretty(&TensorJson::from(t))?)
}

pub fn partial_to_json(t: &PartialSymTensor) -> Result<String> {
    Ok(serde_json::to_string_pretty(&TensorJson::from(t))?)
}

pub fn partial_from_json(text: &str) -> Result<PartialSymTensor> {
    serde_json::from_str::<TensorJson>(text)?.to_partial()
}

pub fn sym_from_json(text: &str) -> Result<SymTensor> {
    serde_json::from_str::<TensorJson>(text)?.to_sym()
}

/// A basis file is a JSON array of partial tensors.
pub fn basis_to_json(basis: &[PartialSymTensor]) -> Result<String> {
    let list: Vec<TensorJson> = basis.iter().map(TensorJson::from).collect();
    Ok(serde_json::to_string_pretty(&list)?)
}

pub fn basis_from_json(text: &str) -> Result<Vec<PartialSymTensor>> {
    serde_json::from_str::<Vec<TensorJson>>(text)?
        .iter()
        .map(TensorJson::to_partial)
        .collect()
}

/// Modulus coefficients and coordinate residues, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub modulus: Vec<Number>,
    pub coords: Vec<Vec<Number>>,
}

impl From<&PointOnX> for PointJson {
    fn from(p: &PointOnX) -> Self {
        PointJson {
            modulus: p.modulus.coeffs().iter().map(Number::from).collect(),
            coords: p
                .coords
                .iter()
                .map(|c| c.rep().coeffs().iter().map(Number::from).collect())
                .collect(),
        }
    }
}

impl PointJson {
    /// Coordinates as quotient-ring elements.
    pub fn to_coords(&self) -> Result<Vec<QuotElem>> {
        let poly = |v: &[Number]| -> Result<UPoly> {
            Ok(UPoly::new(v.iter().map(Number::to_rational).collect::<Result<_>>()?))
        };
        let m = poly(&self.modulus)?;
        QuotElem::check_modulus(&m)?;
        let m = Arc::new(m);
        self.coords
            .iter()
            .map(|c| Ok(QuotElem::new(m.clone(), poly(c)?)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::point::point_on_line;
    use crate::deform::space::{basis_a, fermat_tensor};
    use crate::scalar::{frac, rat};

    #[test]
    fn partial_round_trip_and_layout() {
        let basis = basis_a(3, 2).unwrap();
        let text = basis_to_json(&basis).unwrap();
        assert_eq!(basis_from_json(&text).unwrap(), basis);
        let one = partial_to_json(&basis[0]).unwrap();
        assert!(one.contains("\"kind\": \"partial\""));
        assert!(one.contains("\"slot\""));
        assert_eq!(partial_from_json(&one).unwrap(), basis[0]);
    }

    #[test]
    fn sym_round_trip() {
        let mut q = fermat_tensor(4, 3).unwrap();
        q.add_term(MultiIndex::new(vec![1, 1, 1, 0, 0]), frac(-2, 3)).unwrap();
        let text = sym_to_json(&q).unwrap();
        assert!(!text.contains("slot"));
        assert!(text.contains("\"den\": \"3\""));
        assert_eq!(sym_from_json(&text).unwrap(), q);
        assert!(partial_from_json(&text).is_err());
    }

    #[test]
    fn malformed_input() {
        assert!(partial_from_json("{\"n\": 4}").is_err());
        let bad_den = r#"{"n":1,"d":2,"kind":"sym","entries":[{"mono":[2,0],"num":"1","den":"0"}]}"#;
        assert!(sym_from_json(bad_den).is_err());
        let bad_deg = r#"{"n":1,"d":2,"kind":"sym","entries":[{"mono":[1,0],"num":"1","den":"1"}]}"#;
        assert!(sym_from_json(bad_deg).is_err());
        let no_slot = r#"{"n":1,"d":2,"kind":"partial","entries":[{"mono":[1,0],"num":"1","den":"1"}]}"#;
        assert!(partial_from_json(no_slot).is_err());
    }

    #[test]
    fn point_round_trip() {
        let q = fermat_tensor(4, 4).unwrap();
        let p = vec![rat(1), rat(0), rat(0), rat(0), rat(0)];
        let w = vec![rat(0), rat(1), rat(0), rat(0), rat(0)];
        let pt = point_on_line(&q, &p, &w).unwrap().unwrap();
        let json = PointJson::from(&pt);
        assert_eq!(json.modulus.len(), 5);
        assert_eq!(json.to_coords().unwrap(), pt.coords);
    }
}
