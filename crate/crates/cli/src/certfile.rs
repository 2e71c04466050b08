//! Certificate files.
//!
//! A certificate is a TOML document:
//!
//! ```toml
//! p = 2
//! e = 1
//! m = 2
//! target = "x^3"
//!
//! [[cofactors]]
//! generator = 0
//! polynomial = "y"
//!
//! [[cofactors]]
//! generator = 1
//! polynomial = "x"
//! ```
//!
//! `generator` indexes g_0 .. g_(e+1); polynomials use the text format of
//! the core crate over Z.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thetaring::{Certificate, IntegerRing, Polynomial};

#[derive(Debug, thiserror::Error)]
pub enum CertFileError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("malformed certificate: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("bad polynomial: {0}")]
    Poly(#[from] thetaring::Error),
}

#[derive(Serialize, Deserialize)]
struct CertDoc {
    p: u64,
    e: u32,
    m: u32,
    target: String,
    #[serde(default)]
    cofactors: Vec<CofactorDoc>,
}

#[derive(Serialize, Deserialize)]
struct CofactorDoc {
    generator: usize,
    polynomial: String,
}

pub fn to_toml(c: &Certificate) -> String {
    let doc = CertDoc {
        p: c.p,
        e: c.e,
        m: c.m,
        target: c.target.to_string(),
        cofactors: c
            .cofactors
            .iter()
            .map(|(i, h)| CofactorDoc {
                generator: *i,
                polynomial: h.to_string(),
            })
            .collect(),
    };
    toml::to_string(&doc).expect("certificate serializes")
}

pub fn from_toml(text: &str) -> Result<Certificate, CertFileError> {
    let doc: CertDoc = toml::from_str(text)?;
    let parse = |s: &str| Polynomial::parse(IntegerRing, s);
    let mut cofactors = Vec::with_capacity(doc.cofactors.len());
    for c in &doc.cofactors {
        cofactors.push((c.generator, parse(&c.polynomial)?));
    }
    Ok(Certificate {
        p: doc.p,
        e: doc.e,
        m: doc.m,
        target: parse(&doc.target)?,
        cofactors,
    })
}

pub fn write(path: &Path, c: &Certificate) -> io::Result<()> {
    fs::write(path, to_toml(c))
}

pub fn read(path: &Path) -> Result<Certificate, CertFileError> {
    from_toml(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use thetaring::verify_certificate;

    fn zpoly(s: &str) -> Polynomial<IntegerRing> {
        Polynomial::parse(IntegerRing, s).unwrap()
    }

    #[test]
    fn round_trip() {
        let c = Certificate {
            p: 2,
            e: 1,
            m: 2,
            target: zpoly("x^3"),
            cofactors: vec![(0, zpoly("y")), (1, zpoly("x"))],
        };
        let text = to_toml(&c);
        assert!(text.contains("target = \"x^3\""));
        let back = from_toml(&text).unwrap();
        assert_eq!(back.target, c.target);
        assert_eq!(back.cofactors, c.cofactors);
        assert!(verify_certificate(&back));
    }

    #[test]
    fn empty_cofactor_list() {
        let c = from_toml("p = 3\ne = 1\nm = 2\ntarget = \"0\"\n").unwrap();
        assert!(c.cofactors.is_empty());
        assert!(verify_certificate(&c));
    }

    #[test]
    fn malformed() {
        assert!(matches!(from_toml("p = 2"), Err(CertFileError::Toml(_))));
        let bad = "p = 2\ne = 1\nm = 2\ntarget = \"x^^3\"\n";
        assert!(matches!(from_toml(bad), Err(CertFileError::Poly(_))));
    }
}
