//! Serialization helpers: complex numbers travel as `[re, im]` pairs.

use serde::ser::{SerializeTuple, Serializer};

use crate::scalar::{Real, C};

fn f(x: impl Real) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn ser_complex<T: Real, S: Serializer>(c: &C<T>, s: S) -> Result<S::Ok, S::Error> {
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&f(c.re))?;
    t.serialize_element(&f(c.im))?;
    t.end()
}

pub fn ser_opt_complex<T: Real, S: Serializer>(c: &Option<C<T>>, s: S) -> Result<S::Ok, S::Error> {
    match c {
        Some(c) => ser_complex(c, s),
        None => s.serialize_none(),
    }
}

/// `[re, im]` of a complex value, as plain `f64`.
pub fn pair<T: Real>(c: C<T>) -> [f64; 2] {
    [f(c.re), f(c.im)]
}
