//! JSON codecs for the domain types. Rationals travel as canonical
//! `"num/den"` strings (reduced, positive denominator, `/1` elided), so
//! encoding a decoded canonical document is byte-identical.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Approximation, FinSet, Seq, TreePrefixWitness, Vertex};
use crate::dual::Functional;
use crate::error::{Error, Result};
use crate::norm::{AdmissibleFamily, NormCertificate, Params, Variant, Vector};
use crate::rational::{format_rational, parse_rational};

#[derive(Serialize, Deserialize)]
pub struct VectorWire {
    pub k: usize,
    pub coords: Vec<CoordWire>,
}

#[derive(Serialize, Deserialize)]
pub struct CoordWire {
    pub v: Vec<u32>,
    pub a: String,
}

#[derive(Serialize, Deserialize)]
pub struct ParamsWire {
    pub k: usize,
    pub d: usize,
    pub theta: String,
    pub variant: String,
}

#[derive(Serialize, Deserialize)]
pub struct ApproximationWire {
    pub set: Vec<Vec<u32>>,
    pub witness: Vec<WitnessEntryWire>,
}

#[derive(Serialize, Deserialize)]
pub struct WitnessEntryWire {
    pub s: Vec<u32>,
    pub x: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
pub struct FamilyWire {
    pub blocks: Vec<ApproximationWire>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub separators: Option<Vec<Vec<u32>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CertificateWire {
    Zero,
    Leaf {
        v: Vec<u32>,
        value: String,
    },
    Node {
        family: FamilyWire,
        children: Vec<CertificateWire>,
        value: String,
    },
}

#[derive(Serialize, Deserialize)]
pub struct FunctionalWire {
    pub k: usize,
    pub coords: Vec<CoordWire>,
    pub depth: usize,
}

fn json_err(e: impl std::fmt::Display) -> Error {
    Error::Json(e.to_string())
}

// ---- vectors ------------------------------------------------------------

pub fn vector_to_wire(x: &Vector) -> VectorWire {
    VectorWire {
        k: x.k(),
        coords: x
            .iter()
            .map(|(v, a)| CoordWire {
                v: v.entries().to_vec(),
                a: format_rational(a),
            })
            .collect(),
    }
}

pub fn vector_from_wire(w: &VectorWire) -> Result<Vector> {
    let mut x = Vector::zero(w.k)?;
    for c in &w.coords {
        let v = Vertex::new(c.v.clone())?;
        let cur = x.coefficient(&v) + parse_rational(&c.a)?;
        x.set(v, cur)?;
    }
    Ok(x)
}

pub fn vector_to_json(x: &Vector) -> String {
    serde_json::to_string(&vector_to_wire(x)).expect("vector serializes")
}

pub fn vector_from_json(s: &str) -> Result<Vector> {
    let w: VectorWire = serde_json::from_str(s).map_err(json_err)?;
    vector_from_wire(&w)
}

// ---- params -------------------------------------------------------------

pub fn params_to_wire(p: &Params) -> ParamsWire {
    ParamsWire {
        k: p.k(),
        d: p.d(),
        theta: format_rational(p.theta()),
        variant: p.variant().to_string(),
    }
}

pub fn params_from_wire(w: &ParamsWire) -> Result<Params> {
    let variant = match w.variant.as_str() {
        "T_k" | "tk" => Variant::Tk,
        "T_A" | "ta" => Variant::Ta,
        other => return Err(Error::Json(format!("unknown variant {other:?}"))),
    };
    Params::new(w.k, w.d, parse_rational(&w.theta)?, variant)
}

pub fn params_to_json(p: &Params) -> String {
    serde_json::to_string(&params_to_wire(p)).expect("params serialize")
}

pub fn params_from_json(s: &str) -> Result<Params> {
    let w: ParamsWire = serde_json::from_str(s).map_err(json_err)?;
    params_from_wire(&w)
}

// ---- approximations -----------------------------------------------------

pub fn approximation_to_wire(a: &Approximation) -> ApproximationWire {
    ApproximationWire {
        set: a
            .set()
            .members()
            .iter()
            .map(|v| v.entries().to_vec())
            .collect(),
        witness: a
            .witness()
            .assignments()
            .iter()
            .map(|(s, x)| WitnessEntryWire {
                s: s.entries().to_vec(),
                x: x.entries().to_vec(),
            })
            .collect(),
    }
}

pub fn approximation_from_wire(w: &ApproximationWire) -> Result<Approximation> {
    let members = w
        .set
        .iter()
        .map(|e| Vertex::new(e.clone()))
        .collect::<Result<Vec<_>>>()?;
    let set = FinSet::from_vertices(members)?;
    let mut assignments = Vec::with_capacity(w.witness.len());
    for entry in &w.witness {
        assignments.push((Seq::new(entry.s.clone())?, Seq::new(entry.x.clone())?));
    }
    let approx = Approximation::from_parts(set, TreePrefixWitness::new(assignments));
    approx.validate()?;
    Ok(approx)
}

/// Encode a finite vertex set (for the membership front-end).
pub fn finset_from_json(s: &str) -> Result<FinSet> {
    let rows: Vec<Vec<u32>> = serde_json::from_str(s).map_err(json_err)?;
    FinSet::from_vertices(
        rows.into_iter()
            .map(Vertex::new)
            .collect::<Result<Vec<_>>>()?,
    )
}

pub fn approximation_to_json(a: &Approximation) -> String {
    serde_json::to_string(&approximation_to_wire(a)).expect("approximation serializes")
}

// ---- certificates ---------------------------------------------------------

pub fn certificate_to_wire(c: &NormCertificate) -> CertificateWire {
    match c {
        NormCertificate::Zero => CertificateWire::Zero,
        NormCertificate::Leaf { vertex, value } => CertificateWire::Leaf {
            v: vertex.entries().to_vec(),
            value: format_rational(value),
        },
        NormCertificate::Node {
            family,
            children,
            value,
        } => CertificateWire::Node {
            family: FamilyWire {
                blocks: family.blocks.iter().map(approximation_to_wire).collect(),
                separators: family
                    .separators
                    .as_ref()
                    .map(|seps| seps.iter().map(|v| v.entries().to_vec()).collect()),
            },
            children: children.iter().map(certificate_to_wire).collect(),
            value: format_rational(value),
        },
    }
}

pub fn certificate_from_wire(w: &CertificateWire) -> Result<NormCertificate> {
    Ok(match w {
        CertificateWire::Zero => NormCertificate::Zero,
        CertificateWire::Leaf { v, value } => NormCertificate::Leaf {
            vertex: Vertex::new(v.clone())?,
            value: parse_rational(value)?,
        },
        CertificateWire::Node {
            family,
            children,
            value,
        } => {
            let blocks = family
                .blocks
                .iter()
                .map(approximation_from_wire)
                .collect::<Result<Vec<_>>>()?;
            let separators = match &family.separators {
                None => None,
                Some(rows) => Some(
                    rows.iter()
                        .map(|e| Vertex::new(e.clone()))
                        .collect::<Result<Vec<_>>>()?,
                ),
            };
            NormCertificate::Node {
                family: AdmissibleFamily { blocks, separators },
                children: children
                    .iter()
                    .map(certificate_from_wire)
                    .collect::<Result<Vec<_>>>()?,
                value: parse_rational(value)?,
            }
        }
    })
}

pub fn certificate_to_json(c: &NormCertificate) -> String {
    serde_json::to_string(&certificate_to_wire(c)).expect("certificate serializes")
}

pub fn certificate_from_json(s: &str) -> Result<NormCertificate> {
    certificate_from_wire(&serde_json::from_str(s).map_err(json_err)?)
}

// ---- functionals ----------------------------------------------------------

pub fn functional_to_json(f: &Functional) -> String {
    let wire = FunctionalWire {
        k: f.vector.k(),
        coords: vector_to_wire(&f.vector).coords,
        depth: f.depth,
    };
    serde_json::to_string(&wire).expect("functional serializes")
}

pub fn functional_from_json(s: &str) -> Result<Functional> {
    let w: FunctionalWire = serde_json::from_str(s).map_err(json_err)?;
    let vector = vector_from_wire(&VectorWire {
        k: w.k,
        coords: w.coords,
    })?;
    Ok(Functional {
        vector,
        depth: w.depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::NormEngine;
    use crate::rational::big_rational;

    #[test]
    fn vector_json_round_trips_byte_identically() {
        let s = r#"{"k":2,"coords":[{"v":[0,1],"a":"1/2"},{"v":[1,1],"a":"-2"}]}"#;
        let x = vector_from_json(s).unwrap();
        assert_eq!(vector_to_json(&x), s);
    }

    #[test]
    fn params_json_round_trips() {
        let s = r#"{"k":2,"d":3,"theta":"2/3","variant":"T_k"}"#;
        let p = params_from_json(s).unwrap();
        assert_eq!(params_to_json(&p), s);
        assert!(params_from_json(r#"{"k":2,"d":3,"theta":"2/3","variant":"T_q"}"#).is_err());
    }

    #[test]
    fn certificate_json_round_trips_and_still_verifies() {
        let p = params_from_json(r#"{"k":2,"d":2,"theta":"2/3","variant":"T_A"}"#).unwrap();
        let eng = NormEngine::new(p.clone());
        let x = vector_from_json(r#"{"k":2,"coords":[{"v":[0,0],"a":"1"},{"v":[0,1],"a":"1"}]}"#)
            .unwrap();
        let (val, cert) = eng.norm(&x).unwrap();
        assert_eq!(val, big_rational(4, 3));
        let json = certificate_to_json(&cert);
        let back = certificate_from_json(&json).unwrap();
        assert_eq!(back, cert);
        crate::norm::verify_certificate(&x, &p, &back).unwrap();
        assert_eq!(certificate_to_json(&back), json);
    }

    #[test]
    fn corrupt_documents_are_rejected() {
        assert!(vector_from_json(r#"{"k":2,"coords":[{"v":[1,0],"a":"1"}]}"#).is_err());
        assert!(vector_from_json("not json").is_err());
        assert!(finset_from_json("[[0,1],[2,0]]").is_err());
    }
}
