use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{ExponentVector, MultiIndexIter};

/// Default cap on `Π (k_i + 1)`, the size of the non-vanishing monomial table.
pub const DEFAULT_SIZE_LIMIT: u128 = 1_000_000;

/// Sparse coefficient vector: `(basis index, nonzero coefficient)`, ascending.
pub(crate) type Sparse = Vec<(usize, BigRational)>;

/// Computable presentation of a Weil algebra `ℝ[X]/I`.
///
/// Holds the standard monomial basis (unit first), the multiplication table on
/// unordered index pairs, the maximal nonvanishing power of every variable, and
/// the basis representation of every monomial `X^α` with `α ≤ max_powers`.
#[derive(Clone)]
pub struct WeilSettings {
    var_count: usize,
    basis: Vec<ExponentVector>,
    max_powers: Vec<u32>,
    mult_table: Vec<Sparse>,
    non_van: Vec<Sparse>,
    index: HashMap<ExponentVector, usize>,
}

fn tri(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    j * (j + 1) / 2 + i
}

pub(crate) fn box_size(caps: &[u32]) -> u128 {
    caps.iter().map(|&k| u128::from(k) + 1).product()
}

fn box_offset(caps: &[u32], alpha: &[u32]) -> Option<usize> {
    if alpha.len() != caps.len() {
        return None;
    }
    let mut off = 0usize;
    for (&a, &k) in alpha.iter().zip(caps) {
        if a > k {
            return None;
        }
        off = off * (k as usize + 1) + a as usize;
    }
    Some(off)
}

fn sparsify(dense: Vec<BigRational>) -> Sparse {
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn densify(sparse: &[(usize, BigRational)], len: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); len];
    for (j, c) in sparse {
        v[*j] = c.clone();
    }
    v
}

fn is_unit_vector(v: &[(usize, BigRational)], j: usize) -> bool {
    matches!(v, [(k, c)] if *k == j && c.is_one())
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSettings(msg.into())
}

impl WeilSettings {
    /// Builds settings from dense tables and checks every structural invariant.
    ///
    /// Missing multiplication-table or non-vanishing entries are zero.
    pub fn from_parts<M, N>(
        var_count: usize,
        basis: Vec<ExponentVector>,
        max_powers: Vec<u32>,
        mult_table: M,
        non_van: N,
    ) -> Result<Self>
    where
        M: IntoIterator<Item = ((usize, usize), Vec<BigRational>)>,
        N: IntoIterator<Item = (ExponentVector, Vec<BigRational>)>,
    {
        if max_powers.len() != var_count {
            return Err(invalid(format!(
                "{} max powers for {var_count} variables",
                max_powers.len()
            )));
        }
        let size = box_size(&max_powers);
        if size > DEFAULT_SIZE_LIMIT {
            return Err(Error::TooLarge {
                size,
                limit: DEFAULT_SIZE_LIMIT,
            });
        }
        let l = basis.len();
        if l == 0 || !basis[0].is_zero() || basis[0].len() != var_count {
            return Err(invalid("basis must start with the unit monomial"));
        }
        let mut index = HashMap::with_capacity(l);
        for (j, b) in basis.iter().enumerate() {
            if b.len() != var_count {
                return Err(invalid(format!("basis monomial {b} has wrong arity")));
            }
            if !b.within(&max_powers) {
                return Err(invalid(format!("basis monomial {b} exceeds max powers")));
            }
            if index.insert(b.clone(), j).is_some() {
                return Err(invalid(format!("duplicate basis monomial {b}")));
            }
        }

        let mut table = vec![None; l * (l + 1) / 2];
        for ((i, j), coeffs) in mult_table {
            if i >= l || j >= l {
                return Err(invalid(format!("table index ({i}, {j}) out of range")));
            }
            if coeffs.len() != l {
                return Err(invalid(format!("table entry ({i}, {j}) has wrong length")));
            }
            if table[tri(i, j)].replace(sparsify(coeffs)).is_some() {
                return Err(invalid(format!("duplicate table entry ({i}, {j})")));
            }
        }
        let mult_table: Vec<Sparse> = table.into_iter().map(Option::unwrap_or_default).collect();

        let mut nv = vec![None; size as usize];
        for (alpha, coeffs) in non_van {
            let off = box_offset(&max_powers, alpha.as_slice())
                .ok_or_else(|| invalid(format!("non-vanishing monomial {alpha} outside box")))?;
            if coeffs.len() != l {
                return Err(invalid(format!(
                    "non-vanishing entry {alpha} has wrong length"
                )));
            }
            if nv[off].replace(sparsify(coeffs)).is_some() {
                return Err(invalid(format!("duplicate non-vanishing entry {alpha}")));
            }
        }
        let non_van: Vec<Sparse> = nv.into_iter().map(Option::unwrap_or_default).collect();

        let settings = WeilSettings {
            var_count,
            basis,
            max_powers,
            mult_table,
            non_van,
            index,
        };
        settings.validate()?;
        Ok(settings)
    }

    fn validate(&self) -> Result<()> {
        let l = self.dim();
        for (j, b) in self.basis.iter().enumerate() {
            if !is_unit_vector(self.non_van_sparse(b).unwrap_or(&[]), j) {
                return Err(invalid(format!(
                    "representation of basis monomial {b} is not e_{j}"
                )));
            }
            if !is_unit_vector(self.mult_sparse(0, j), j) {
                return Err(invalid(format!("unit times e_{j} is not e_{j}")));
            }
        }
        for i in 0..self.var_count {
            let top = ExponentVector::pure_power(self.var_count, i, self.max_powers[i]);
            if self.non_van_sparse(&top).is_none_or(|v| v.is_empty()) {
                return Err(invalid(format!("max power of variable {i} vanishes")));
            }
        }
        for i in 0..l {
            for j in i..l {
                let prod = self.basis[i].mul(&self.basis[j]);
                let expected = self.non_van_sparse(&prod).unwrap_or(&[]);
                if self.mult_sparse(i, j) != expected {
                    return Err(invalid(format!(
                        "table entry ({i}, {j}) disagrees with the representation of {prod}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds settings whose tables are derived from a representation map.
    ///
    /// `repr` must give the coordinates of every `X^α` with `α ≤ max_powers`.
    pub(crate) fn from_representation(
        basis: Vec<ExponentVector>,
        max_powers: Vec<u32>,
        mut repr: impl FnMut(&ExponentVector) -> Result<Vec<BigRational>>,
    ) -> Result<Self> {
        let var_count = max_powers.len();
        let mut non_van = Vec::new();
        for alpha in MultiIndexIter::new(&max_powers) {
            let v = repr(&alpha)?;
            non_van.push((alpha, v));
        }
        let l = basis.len();
        let lookup: BTreeMap<ExponentVector, Vec<BigRational>> = non_van.iter().cloned().collect();
        let mut table = Vec::new();
        for i in 0..l {
            for j in i..l {
                let prod = basis[i].mul(&basis[j]);
                if let Some(v) = lookup.get(&prod) {
                    table.push(((i, j), v.clone()));
                }
            }
        }
        Self::from_parts(var_count, basis, max_powers, table, non_van)
    }

    /// `ℝ[X]/(X^m)` for `m ≥ 1`; `m = 1` is the real line itself.
    pub fn d_order(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(invalid("DOrder needs m >= 1"));
        }
        let k = m - 1;
        let basis: Vec<ExponentVector> = (0..m).map(|p| ExponentVector::new(vec![p])).collect();
        let ell = m as usize;
        let unit = |j: usize| {
            let mut v = vec![BigRational::zero(); ell];
            v[j] = BigRational::one();
            v
        };
        let mut table = Vec::new();
        for i in 0..ell {
            for j in i..ell {
                if i + j <= k as usize {
                    table.push(((i, j), unit(i + j)));
                }
            }
        }
        let non_van = (0..ell).map(|p| (ExponentVector::new(vec![p as u32]), unit(p)));
        Self::from_parts(1, basis, vec![k], table, non_van)
    }

    /// The dual numbers `ℝ[X]/(X²)`.
    pub fn d1() -> Self {
        Self::d_order(2).expect("preset is valid")
    }

    /// `ℝ` presented as `ℝ[X]/(X)`.
    pub fn real_line() -> Self {
        Self::d_order(1).expect("preset is valid")
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    /// Dimension `ℓ` as a real vector space.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExponentVector] {
        &self.basis
    }

    pub fn max_powers(&self) -> &[u32] {
        &self.max_powers
    }

    pub fn index_of(&self, b: &ExponentVector) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Coordinates of `b_i · b_j`.
    pub fn mult_entry(&self, i: usize, j: usize) -> Result<Vec<BigRational>> {
        let l = self.dim();
        for k in [i, j] {
            if k >= l {
                return Err(Error::IndexOutOfRange { index: k, limit: l });
            }
        }
        Ok(densify(self.mult_sparse(i, j), l))
    }

    /// Coordinates of `X^α`, or `None` when `α` exceeds the max powers (the
    /// monomial is then zero in the algebra).
    pub fn non_van(&self, alpha: &ExponentVector) -> Option<Vec<BigRational>> {
        self.non_van_sparse(alpha).map(|v| densify(v, self.dim()))
    }

    pub(crate) fn mult_sparse(&self, i: usize, j: usize) -> &[(usize, BigRational)] {
        &self.mult_table[tri(i, j)]
    }

    pub(crate) fn non_van_sparse(&self, alpha: &ExponentVector) -> Option<&[(usize, BigRational)]> {
        box_offset(&self.max_powers, alpha.as_slice()).map(|o| self.non_van[o].as_slice())
    }

    /// Row-major offset of `α` inside the box `α ≤ max_powers`.
    pub(crate) fn box_offset(&self, alpha: &ExponentVector) -> usize {
        box_offset(&self.max_powers, alpha.as_slice()).expect("monomial inside the box")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SettingsJson::from(self)).expect("settings serialize")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&SettingsJson::from(self)).expect("settings serialize")
    }

    /// Parses and validates settings JSON.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: SettingsJson =
            serde_json::from_str(text).map_err(|e| invalid(format!("malformed JSON: {e}")))?;
        raw.try_into()
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let raw: SettingsJson =
            serde_json::from_value(value).map_err(|e| invalid(format!("malformed JSON: {e}")))?;
        raw.try_into()
    }
}

impl PartialEq for WeilSettings {
    fn eq(&self, other: &Self) -> bool {
        self.var_count == other.var_count
            && self.basis == other.basis
            && self.mult_table == other.mult_table
    }
}

impl Eq for WeilSettings {}

impl fmt::Debug for WeilSettings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeilSettings")
            .field("var_count", &self.var_count)
            .field("basis", &self.basis)
            .field("max_powers", &self.max_powers)
            .finish_non_exhaustive()
    }
}

/// A JSON coefficient: an integer when it fits, otherwise `"p/q"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Int(i64),
    Text(String),
}

impl From<&BigRational> for JsonCoeff {
    fn from(q: &BigRational) -> Self {
        match (q.is_integer(), q.numer().to_i64()) {
            (true, Some(n)) => JsonCoeff::Int(n),
            _ => JsonCoeff::Text(q.to_string()),
        }
    }
}

impl TryFrom<JsonCoeff> for BigRational {
    type Error = Error;

    fn try_from(c: JsonCoeff) -> Result<Self> {
        match c {
            JsonCoeff::Int(n) => Ok(BigRational::from_integer(n.into())),
            JsonCoeff::Text(s) => {
                let bad = || invalid(format!("bad coefficient `{s}`"));
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s.trim(), "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MultEntryJson {
    i: usize,
    j: usize,
    coeffs: Vec<JsonCoeff>,
}

#[derive(Serialize, Deserialize)]
struct NonVanEntryJson {
    monomial: Vec<u32>,
    coeffs: Vec<JsonCoeff>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SettingsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    var_count: Option<usize>,
    basis: Vec<Vec<u32>>,
    max_powers: Vec<u32>,
    mult_table: Vec<MultEntryJson>,
    non_van: Vec<NonVanEntryJson>,
}

fn coeffs_json(v: &[(usize, BigRational)], len: usize) -> Vec<JsonCoeff> {
    densify(v, len).iter().map(JsonCoeff::from).collect()
}

impl From<&WeilSettings> for SettingsJson {
    fn from(s: &WeilSettings) -> Self {
        let l = s.dim();
        let mut mult_table = Vec::new();
        for j in 0..l {
            for i in 0..=j {
                let v = s.mult_sparse(i, j);
                if !v.is_empty() {
                    mult_table.push(MultEntryJson {
                        i,
                        j,
                        coeffs: coeffs_json(v, l),
                    });
                }
            }
        }
        let non_van = MultiIndexIter::new(&s.max_powers)
            .filter_map(|alpha| {
                let v = s.non_van_sparse(&alpha)?;
                (!v.is_empty()).then(|| NonVanEntryJson {
                    coeffs: coeffs_json(v, l),
                    monomial: alpha.into_vec(),
                })
            })
            .collect();
        SettingsJson {
            var_count: Some(s.var_count),
            basis: s.basis.iter().map(|b| b.as_slice().to_vec()).collect(),
            max_powers: s.max_powers.clone(),
            mult_table,
            non_van,
        }
    }
}

fn parse_coeffs(v: Vec<JsonCoeff>) -> Result<Vec<BigRational>> {
    v.into_iter().map(BigRational::try_from).collect()
}

impl TryFrom<SettingsJson> for WeilSettings {
    type Error = Error;

    fn try_from(raw: SettingsJson) -> Result<Self> {
        let var_count = raw.var_count.unwrap_or(raw.max_powers.len());
        let table = raw
            .mult_table
            .into_iter()
            .map(|e| Ok(((e.i, e.j), parse_coeffs(e.coeffs)?)))
            .collect::<Result<Vec<_>>>()?;
        let non_van = raw
            .non_van
            .into_iter()
            .map(|e| Ok((ExponentVector::new(e.monomial), parse_coeffs(e.coeffs)?)))
            .collect::<Result<Vec<_>>>()?;
        WeilSettings::from_parts(
            var_count,
            raw.basis.into_iter().map(ExponentVector::new).collect(),
            raw.max_powers,
            table,
            non_van,
        )
    }
}
