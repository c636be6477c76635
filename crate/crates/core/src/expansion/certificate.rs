use std::collections::HashMap;
use std::fmt::Write as _;

use super::counterexample::{cover_lower_bound, line_disjoint_support};
use crate::gf_poly::Field;
use crate::rational::{format_frac, frac, parse_frac, Frac};
use crate::tensor::{format, CodeFamily, SumMethod, TensorWord};
use crate::{Error, Result};

const MAGIC: &str = "expansion-certificate v1";

/// Evidence that `rho(family) <= bound`: a sum-code word whose support needs
/// at least `cover_lower_bound` axis-parallel lines to cover. Any
/// decomposition has `sum_i ||a_i||_i >= cover_lower_bound / max_i |L_i|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionCertificate {
    pub instance: String,
    pub field: Field,
    pub witness: TensorWord,
    pub bound: Frac,
    pub support: usize,
    pub line_disjoint: bool,
    pub cover_lower_bound: usize,
    pub max_lines: usize,
}

fn max_lines(word: &TensorWord) -> usize {
    (0..word.dims()).map(|a| word.line_count(a)).max().unwrap_or(0)
}

/// Builds the certificate for a nonzero word of the sum code.
pub fn certify_upper_bound(word: &TensorWord, family: &CodeFamily) -> Result<ExpansionCertificate> {
    if !family.sum_contains(word, family.default_sum_method())? {
        return Err(Error::NotInCode("certificate witness is not in the sum code".into()));
    }
    let support = word.weight();
    if support == 0 {
        return Err(Error::Degenerate("the zero word certifies nothing".into()));
    }
    let cover = cover_lower_bound(word);
    let lines = max_lines(word);
    Ok(ExpansionCertificate {
        instance: String::new(),
        field: family.field().clone(),
        witness: word.clone(),
        bound: frac((support * lines) as i64, (word.len() * cover) as i64),
        support,
        line_disjoint: line_disjoint_support(word),
        cover_lower_bound: cover,
        max_lines: lines,
    })
}

impl ExpansionCertificate {
    pub fn with_instance(mut self, instance: impl Into<String>) -> Self {
        self.instance = instance.into();
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC}");
        let _ = writeln!(out, "instance {}", self.instance);
        let _ = writeln!(out, "bound {}", format_frac(&self.bound));
        let _ = writeln!(out, "support {}", self.support);
        let _ = writeln!(out, "line_disjoint {}", self.line_disjoint);
        let _ = writeln!(out, "cover_lower_bound {}", self.cover_lower_bound);
        let _ = writeln!(out, "max_lines {}", self.max_lines);
        let _ = writeln!(out, "witness");
        out.push_str(&format::write_word(&self.witness, &self.field));
        out
    }

    pub fn parse(text: &str) -> Result<ExpansionCertificate> {
        let (head, body) =
            text.split_once("\nwitness\n").ok_or_else(|| Error::Parse("certificate has no witness section".into()))?;
        let mut lines = head.lines();
        if lines.next().map(str::trim) != Some(MAGIC) {
            return Err(Error::Parse(format!("certificate must start with `{MAGIC}`")));
        }
        let mut fields = HashMap::new();
        for line in lines {
            let (k, v) = line.split_once(' ').unwrap_or((line, ""));
            fields.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| fields.get(k).cloned().ok_or_else(|| Error::Parse(format!("certificate lacks `{k}`")));
        let num = |k: &str| -> Result<usize> { get(k)?.parse().map_err(|_| Error::Parse(format!("bad `{k}`"))) };
        let (field, witness) = format::parse_word(body)?;
        Ok(ExpansionCertificate {
            instance: get("instance")?,
            field,
            witness,
            bound: parse_frac(&get("bound")?)?,
            support: num("support")?,
            line_disjoint: get("line_disjoint")?.parse().map_err(|_| Error::Parse("bad `line_disjoint`".into()))?,
            cover_lower_bound: num("cover_lower_bound")?,
            max_lines: num("max_lines")?,
        })
    }
}

/// Outcome of [`verify_certificate`]; `failures` is empty for a valid
/// certificate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub failures: Vec<String>,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-checks a certificate from scratch: membership through the dual tensor
/// (independent of the check polynomials), support and line counts by direct
/// counting, and the claimed bound against the recomputed one.
pub fn verify_certificate(cert: &ExpansionCertificate, family: &CodeFamily) -> Result<Verification> {
    let mut failures = Vec::new();
    let w = &cert.witness;
    if &cert.field != family.field() {
        failures.push("field differs from the family".into());
    }
    if w.shape() != family.shape().as_slice() {
        failures.push(format!("witness shape {:?} differs from the family", w.shape()));
        return Ok(Verification { failures });
    }
    if !family.sum_contains(w, SumMethod::DualTensor)? {
        failures.push("witness is not in the sum code".into());
    }
    let support: Vec<Vec<usize>> = w.support().into_iter().map(|i| w.coords_of(i)).collect();
    if support.len() != cert.support {
        failures.push(format!("support is {}, certificate says {}", support.len(), cert.support));
    }
    // Occupancy of every line meeting the support, keyed by (axis, other coordinates).
    let mut occupancy: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    for c in &support {
        for axis in 0..w.dims() {
            let mut key = c.clone();
            key[axis] = usize::MAX;
            *occupancy.entry((axis, key)).or_default() += 1;
        }
    }
    let disjoint = occupancy.values().all(|&v| v <= 1);
    if disjoint != cert.line_disjoint {
        failures.push(format!("line-disjointness is {disjoint}, certificate says {}", cert.line_disjoint));
    }
    if cert.line_disjoint && disjoint && cert.cover_lower_bound > support.len() {
        failures.push("cover bound exceeds the support of a line-disjoint word".into());
    }
    if !disjoint {
        let occ = occupancy.values().copied().max().unwrap_or(1);
        let trivial = support.len().div_ceil(occ);
        let mut used = std::collections::HashSet::new();
        let mut packing = 0;
        for c in &support {
            let keys: Vec<(usize, Vec<usize>)> = (0..w.dims())
                .map(|a| {
                    let mut k = c.clone();
                    k[a] = usize::MAX;
                    (a, k)
                })
                .collect();
            if keys.iter().all(|k| !used.contains(k)) {
                used.extend(keys);
                packing += 1;
            }
        }
        if cert.cover_lower_bound > trivial.max(packing) {
            failures.push(format!(
                "cover bound {} is not justified (packing {packing}, occupancy bound {trivial})",
                cert.cover_lower_bound
            ));
        }
    }
    let lines = (0..w.dims()).map(|a| w.len() / w.shape()[a]).max().unwrap_or(0);
    if lines != cert.max_lines {
        failures.push(format!("max line count is {lines}, certificate says {}", cert.max_lines));
    }
    if cert.cover_lower_bound == 0 {
        failures.push("cover bound is zero".into());
    } else {
        let recomputed = frac((support.len() * lines) as i64, (w.len() * cert.cover_lower_bound) as i64);
        if cert.bound < recomputed {
            failures.push(format!(
                "bound {} is below the justified {}",
                format_frac(&cert.bound),
                format_frac(&recomputed)
            ));
        }
    }
    Ok(Verification { failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::counterexample::{counterexample_field, counterexample_word};

    fn cube(t: u32) -> (CodeFamily, TensorWord) {
        let f = counterexample_field(t).unwrap();
        let fam = CodeFamily::reed_solomon(&f, 1, 3, 3).unwrap();
        let a = counterexample_word(&f, f.order() / 3).unwrap();
        (fam, a)
    }

    #[test]
    fn counterexample_bound_is_one_over_n() {
        for t in [1, 2] {
            let (fam, a) = cube(t);
            let cert = certify_upper_bound(&a, &fam).unwrap();
            let n = fam.code(0).length() as i64;
            assert_eq!(cert.bound, frac(1, n));
            assert!(cert.line_disjoint);
            assert_eq!(cert.support as i64, n * n);
        }
    }

    #[test]
    fn text_round_trip_and_verification() {
        let (fam, a) = cube(1);
        let cert = certify_upper_bound(&a, &fam).unwrap().with_instance("rs rate=1/3 dims=3 t=1");
        let back = ExpansionCertificate::parse(&cert.to_text()).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back, &fam).unwrap().is_valid());
    }

    #[test]
    fn tampered_certificates_fail() {
        let (fam, a) = cube(1);
        let cert = certify_upper_bound(&a, &fam).unwrap();
        let mut low = cert.clone();
        low.bound = frac(1, 4);
        assert!(!verify_certificate(&low, &fam).unwrap().is_valid());
        let mut broken = cert.clone();
        broken.witness.data_mut()[0] += crate::gf_poly::Gf(1);
        assert!(!verify_certificate(&broken, &fam).unwrap().is_valid());
        let mut inflated = cert;
        inflated.cover_lower_bound += 1;
        assert!(!verify_certificate(&inflated, &fam).unwrap().is_valid());
    }

    #[test]
    fn non_members_are_rejected() {
        let (fam, mut a) = cube(1);
        a.data_mut()[1] += crate::gf_poly::Gf(1);
        assert!(matches!(certify_upper_bound(&a, &fam), Err(Error::NotInCode(_))));
        assert!(certify_upper_bound(&fam.zero_word(), &fam).is_err());
    }
}
