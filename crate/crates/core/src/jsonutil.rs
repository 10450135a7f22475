//! Serde helpers: exact rationals serialize as `"p/q"` strings, series as
//! ordered term lists, so reports are loss-free and byte-deterministic.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::rational::{format_rational, Rational};
use crate::series::{Series1, Series2, Series3};

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn ser_rational_pair<S: Serializer>(p: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&format_rational(&p.0))?;
    seq.serialize_element(&format_rational(&p.1))?;
    seq.end()
}

pub fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&format_rational(r)),
        None => s.serialize_none(),
    }
}

pub fn ser_opt_rational_pair<S: Serializer>(
    p: &Option<(Rational, Rational)>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => {
            let pair = [format_rational(&p.0), format_rational(&p.1)];
            s.serialize_some(&pair)
        }
        None => s.serialize_none(),
    }
}

pub fn ser_matrix2<S: Serializer>(m: &[[Rational; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<[String; 2]> = m
        .iter()
        .map(|row| [format_rational(&row[0]), format_rational(&row[1])])
        .collect();
    rows.serialize(s)
}

impl Serialize for Series1 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            var: &'a str,
            trunc: u32,
            exact: bool,
            terms: Vec<(u32, String)>,
        }
        Repr {
            var: self.var(),
            trunc: self.trunc(),
            exact: self.is_exact(),
            terms: self.terms().map(|(n, c)| (n, format_rational(c))).collect(),
        }
        .serialize(s)
    }
}

impl Serialize for Series2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            vars: (&'a str, &'a str),
            trunc: u32,
            exact: bool,
            terms: Vec<(u32, u32, String)>,
        }
        Repr {
            vars: self.vars(),
            trunc: self.trunc(),
            exact: self.is_exact(),
            terms: self
                .terms()
                .map(|((i, j), c)| (i, j, format_rational(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl Serialize for Series3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            vars: (&'a str, &'a str, &'a str),
            trunc: u32,
            exact: bool,
            terms: Vec<(u32, u32, u32, String)>,
        }
        Repr {
            vars: self.vars(),
            trunc: self.trunc(),
            exact: self.is_exact(),
            terms: self
                .terms()
                .map(|((i, j, k), c)| (i, j, k, format_rational(c)))
                .collect(),
        }
        .serialize(s)
    }
}
