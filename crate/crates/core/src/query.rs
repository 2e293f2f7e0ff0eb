//! Sorted index over sweep output and target/extremal queries.
//!
//! Queries compare exactly: targets are rationals and the drop of the
//! average distance is `dprime / C(n,2)`, so "closest to δ" reduces to
//! integer cross-multiplication. Ties are returned in full.

use num_rational::Ratio;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sweep::InsetRecord;
use crate::tree::DistanceSum;

/// Which value a target query compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// The Wiener-index drop itself.
    Dprime,
    /// The average-distance drop, `dprime / C(n,2)`.
    Adprime,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Metric> {
        match s {
            "dprime" => Ok(Metric::Dprime),
            "adprime" => Ok(Metric::Adprime),
            other => Err(Error::UnknownMetric(other.to_owned())),
        }
    }
}

/// Records of one sweep sorted by `(dprime, x, y)`.
#[derive(Debug, Clone)]
pub struct DeltaIndex {
    records: Vec<InsetRecord>,
    n: u64,
}

/// Sorts sweep records and rejects duplicate pairs, which would indicate
/// a sweep defect.
pub fn build_index(mut records: Vec<InsetRecord>, n: u64) -> Result<DeltaIndex> {
    sort_records(&mut records);
    let mut pairs: Vec<u64> = records
        .iter()
        .map(|r| (r.x as u64) << 32 | r.y as u64)
        .collect();
    radix_sort_u64(&mut pairs);
    for w in pairs.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateRecord((w[0] >> 32) as u32, w[0] as u32));
        }
    }
    Ok(DeltaIndex { records, n })
}

/// Sorts records by `(dprime, x, y)` with a least-significant-digit
/// radix sort: byte digits, a fixed 16 passes, no comparisons, time and
/// memory linear in the record count.
pub fn sort_records(records: &mut Vec<InsetRecord>) {
    // Order-preserving map of the signed dprime onto u64.
    #[inline]
    fn digit(r: &InsetRecord, pass: usize) -> usize {
        let byte = match pass {
            0..=3 => r.y as u64 >> (8 * pass),
            4..=7 => r.x as u64 >> (8 * (pass - 4)),
            _ => ((r.dprime as u64) ^ (1 << 63)) >> (8 * (pass - 8)),
        };
        (byte & 0xff) as usize
    }

    let mut scratch = records.clone();
    let mut src: &mut [InsetRecord] = records.as_mut_slice();
    let mut dst: &mut [InsetRecord] = scratch.as_mut_slice();
    for pass in 0..16 {
        let mut counts = [0usize; 256];
        for r in src.iter() {
            counts[digit(r, pass)] += 1;
        }
        let mut offset = 0;
        for c in counts.iter_mut() {
            let next = offset + *c;
            *c = offset;
            offset = next;
        }
        for r in src.iter() {
            let d = digit(r, pass);
            dst[counts[d]] = *r;
            counts[d] += 1;
        }
        std::mem::swap(&mut src, &mut dst);
    }
    // 16 passes is even, so the data ended back in `records`.
}

/// LSD radix sort for packed keys; eight fixed byte passes.
fn radix_sort_u64(keys: &mut [u64]) {
    let mut scratch = vec![0u64; keys.len()];
    let mut src: &mut [u64] = keys;
    let mut dst: &mut [u64] = scratch.as_mut_slice();
    for pass in 0..8 {
        let mut counts = [0usize; 256];
        for k in src.iter() {
            counts[(k >> (8 * pass)) as usize & 0xff] += 1;
        }
        let mut offset = 0;
        for c in counts.iter_mut() {
            let next = offset + *c;
            *c = offset;
            offset = next;
        }
        for k in src.iter() {
            let d = (k >> (8 * pass)) as usize & 0xff;
            dst[counts[d]] = *k;
            counts[d] += 1;
        }
        std::mem::swap(&mut src, &mut dst);
    }
}

impl DeltaIndex {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Records ascending by `(dprime, x, y)`.
    pub fn records(&self) -> &[InsetRecord] {
        &self.records
    }

    pub fn vertex_count(&self) -> u64 {
        self.n
    }

    /// Number of unordered vertex pairs, the `adprime` denominator.
    pub fn pair_count(&self) -> i128 {
        self.n as i128 * (self.n as i128 - 1) / 2
    }

    /// The metric value of a record as an exact rational.
    pub fn metric_value(&self, record: &InsetRecord, metric: Metric) -> Rational {
        match metric {
            Metric::Dprime => Ratio::from_integer(record.dprime as i128),
            Metric::Adprime => Ratio::new(record.dprime as i128, self.pair_count()),
        }
    }
}

/// A target query's complete answer: every record at the minimal
/// deviation, sorted by `(x, y)`.
#[derive(Debug, Clone)]
pub struct QueryResult {
    pub records: Vec<InsetRecord>,
    pub metric: Metric,
    pub target: Rational,
    pub deviation: Rational,
}

/// All records whose metric lies closest to `target`. Binary search for
/// the insertion point, then both neighboring values expand to their full
/// tie groups, so the cost is logarithmic plus the answer size.
pub fn closest(index: &DeltaIndex, target: Rational, metric: Metric) -> Result<QueryResult> {
    if index.is_empty() {
        return Err(Error::EmptyIndex);
    }
    // Scale an adprime target by C(n,2) once; then both metrics compare
    // against integer dprime values.
    let scaled = match metric {
        Metric::Dprime => target,
        Metric::Adprime => target * Ratio::from_integer(index.pair_count()),
    };
    let records = index.records();
    let pos = records.partition_point(|r| Ratio::from_integer(r.dprime as i128) < scaled);

    let deviation_of = |dp: DistanceSum| (Ratio::from_integer(dp as i128) - scaled).abs();
    let mut best: Option<(Rational, Vec<DistanceSum>)> = None;
    let mut consider = |dp: DistanceSum| {
        let dev = deviation_of(dp);
        match &mut best {
            None => best = Some((dev, vec![dp])),
            Some((cur, values)) => {
                if dev < *cur {
                    *cur = dev;
                    *values = vec![dp];
                } else if dev == *cur && !values.contains(&dp) {
                    values.push(dp);
                }
            }
        }
    };
    if pos < records.len() {
        consider(records[pos].dprime);
    }
    if pos > 0 {
        consider(records[pos - 1].dprime);
    }
    let (scaled_deviation, values) = best.expect("index is non-empty");

    let mut matched: Vec<InsetRecord> = Vec::new();
    for dp in values {
        // The tie group of one value is contiguous in the sorted order.
        let lo = records.partition_point(|r| r.dprime < dp);
        let hi = records.partition_point(|r| r.dprime <= dp);
        matched.extend_from_slice(&records[lo..hi]);
    }
    matched.sort_unstable();

    let deviation = match metric {
        Metric::Dprime => scaled_deviation,
        Metric::Adprime => scaled_deviation / Ratio::from_integer(index.pair_count()),
    };
    Ok(QueryResult {
        records: matched,
        metric,
        target,
        deviation,
    })
}

/// Direction for [`top_k`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Max,
    Min,
}

/// The `k` records with the largest or smallest drop; within one drop
/// value, `(x, y)` ascending.
pub fn top_k(index: &DeltaIndex, k: usize, direction: Direction) -> Result<Vec<InsetRecord>> {
    let m = index.len();
    if k == 0 || k > m {
        return Err(Error::CountOutOfRange {
            k: k as u64,
            max: m as u64,
        });
    }
    let records = index.records();
    match direction {
        Direction::Min => Ok(records[..k].to_vec()),
        Direction::Max => {
            // Walk dprime groups from the top; groups are contiguous and
            // internally (x, y)-ascending already.
            let mut out: Vec<InsetRecord> = Vec::with_capacity(k);
            let mut hi = m;
            while out.len() < k {
                let dp = records[hi - 1].dprime;
                let lo = records.partition_point(|r| r.dprime < dp);
                let need = k - out.len();
                let group = &records[lo..hi];
                out.extend_from_slice(&group[..need.min(group.len())]);
                hi = lo;
            }
            Ok(out)
        }
    }
}

/// The complete tie sets at both ends of the drop range.
pub fn extremes(index: &DeltaIndex) -> Result<(Vec<InsetRecord>, Vec<InsetRecord>)> {
    if index.is_empty() {
        return Err(Error::EmptyIndex);
    }
    let records = index.records();
    let max_dp = records[records.len() - 1].dprime;
    let min_dp = records[0].dprime;
    let max_lo = records.partition_point(|r| r.dprime < max_dp);
    let min_hi = records.partition_point(|r| r.dprime <= min_dp);
    Ok((records[max_lo..].to_vec(), records[..min_hi].to_vec()))
}
