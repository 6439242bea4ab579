//! Golden reference data: known weight enumerators and parameter rows,
//! stored verbatim.

use crate::params::{CodeSpec, Family};

#[derive(Clone, Copy, Debug)]
pub struct ExampleFixture {
    pub id: &'static str,
    pub family: Family,
    pub p: u64,
    pub l: u32,
    pub m: u32,
    pub h: i64,
    pub f: i64,
    pub t: u32,
    /// Exponents as quoted (unreduced).
    pub exponents: &'static [i128],
    pub nkd: (u64, u32, u64),
    pub enumerator: &'static str,
    /// Enumeration needs the long-run override.
    pub long_run: bool,
}

impl ExampleFixture {
    pub fn spec(&self) -> CodeSpec {
        CodeSpec::new(self.family, self.p, self.l, self.m, self.h, self.f, self.t)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub family: Family,
    pub p: u64,
    pub l: u32,
    pub m: u32,
    pub t: u32,
    pub h: i64,
    pub f: i64,
    pub nkd: (u64, u32, u64),
    pub remark: &'static str,
}

impl TableRow {
    pub fn spec(&self) -> CodeSpec {
        CodeSpec::new(self.family, self.p, self.l, self.m, self.h, self.f, self.t)
    }

    pub fn id(&self) -> String {
        format!("f{}-q{}-t{}-h{}-f{}", self.family, self.p.pow(self.l), self.t, self.h, self.f)
    }
}

macro_rules! example {
    ($id:expr, $fam:ident, ($p:expr, $l:expr, $m:expr, $h:expr, $f:expr, $t:expr), $exps:expr, $nkd:expr, $en:expr, $long:expr) => {
        ExampleFixture {
            id: $id,
            family: Family::$fam,
            p: $p,
            l: $l,
            m: $m,
            h: $h,
            f: $f,
            t: $t,
            exponents: &$exps,
            nkd: $nkd,
            enumerator: $en,
            long_run: $long,
        }
    };
}

pub const EXAMPLES: [ExampleFixture; 12] = [
    example!("c1-q4-t1", One, (2, 2, 2, 1, 3, 1), [51, 66], (85, 6, 60), "1+2040Y^{60}+255Y^{64}+1800Y^{68}", false),
    example!(
        "c1-q4-t2",
        One,
        (2, 2, 2, 1, 3, 2),
        [51, 66, 81],
        (85, 10, 52),
        "1+35700Y^{52}+30600Y^{56}+250920Y^{60}+377655Y^{64}+353700Y^{68}",
        false
    ),
    example!(
        "c1-q4-t3",
        One,
        (2, 2, 2, 1, 3, 3),
        [51, 66, 81, 96],
        (85, 14, 44),
        "1+185640Y^{44}+464100Y^{48}+4641000Y^{52}+17646000Y^{56}+54396600Y^{60}+101483115Y^{64}+89619000Y^{68}",
        true
    ),
    example!("c1-q8-t1", One, (2, 3, 1, 1, 7, 1), [63, 70], (9, 3, 7), "1+252Y^{7}+63Y^{8}+196Y^{9}", false),
    example!(
        "c1-q8-t2",
        One,
        (2, 3, 1, 1, 7, 2),
        [63, 70, 77],
        (9, 5, 5),
        "1+882Y^{5}+1764Y^{6}+7812Y^{7}+12411Y^8+9898Y^9",
        false
    ),
    example!(
        "c1-q8-t3",
        One,
        (2, 3, 1, 1, 7, 3),
        [63, 70, 77, 84],
        (9, 7, 3),
        "1+588Y^{3}+4410Y^{4}+33516Y^{5}+154056Y^{6}+463428Y^7+810621Y^8+630532Y^9",
        false
    ),
    example!("c2-q4-t1", Two, (2, 2, 2, 2, 6, 1), [66], (85, 4, 64), "1+255Y^{64}", false),
    example!(
        "c2-q4-t2",
        Two,
        (2, 2, 2, 2, 6, 2),
        [66, 96],
        (85, 8, 56),
        "1+10200Y^{56}+4080Y^{60}+30855Y^{64}+20400Y^{68}",
        false
    ),
    example!(
        "c2-q4-t3",
        Two,
        (2, 2, 2, 2, 6, 3),
        [66, 96, 126],
        (85, 12, 48),
        "1+92820Y^{48}+142800Y^{52}+1285200Y^{56}+3272160Y^{60}+6390555Y^{64}+5593680Y^{68}",
        true
    ),
    example!("c2-q8-t1", Two, (2, 3, 1, 2, 14, 1), [70], (9, 2, 8), "1+63Y^{8}", false),
    example!(
        "c2-q8-t2",
        Two,
        (2, 3, 1, 2, 14, 2),
        [70, 84],
        (9, 4, 6),
        "1+588Y^{6}+504Y^{7}+1827Y^{8}+1176Y^9",
        false
    ),
    example!(
        "c2-q8-t3",
        Two,
        (2, 3, 1, 2, 14, 3),
        [70, 84, 98],
        (9, 6, 4),
        "1+882Y^{4}+3528Y^{5}+19992Y^{6}+57456Y^{7}+101493Y^8+78792Y^9",
        false
    ),
];

macro_rules! row {
    ($fam:ident, $p:expr, $l:expr, $m:expr, ($t:expr, $h:expr, $f:expr), $nkd:expr, $remark:expr) => {
        TableRow { family: Family::$fam, p: $p, l: $l, m: $m, t: $t, h: $h, f: $f, nkd: $nkd, remark: $remark }
    };
}

/// Family-1 codes over GF(3), GF(9), GF(5), GF(7).
pub const TABLE_FAMILY_ONE: [TableRow; 15] = [
    row!(One, 3, 1, 3, (1, 2, 1), (182, 9, 108), "111 <= d <= 115 is optimal"),
    row!(One, 3, 2, 1, (1, 1, 2), (20, 3, 16), "16 <= d <= 17 is optimal"),
    row!(One, 3, 2, 1, (1, 1, 4), (10, 3, 8), "Y"),
    row!(One, 3, 2, 1, (2, 1, 4), (10, 5, 6), "Y"),
    row!(One, 3, 2, 1, (3, 1, 4), (10, 7, 4), "Y"),
    row!(One, 3, 2, 1, (4, 1, 4), (10, 9, 2), "Y"),
    row!(One, 3, 2, 1, (1, 2, 8), (5, 3, 3), "Y"),
    row!(One, 5, 1, 1, (1, 1, 1), (12, 3, 8), "Y"),
    row!(One, 5, 1, 1, (1, 1, 2), (6, 3, 4), "Y"),
    row!(One, 5, 1, 1, (2, 1, 2), (6, 5, 2), "Y"),
    row!(One, 7, 1, 1, (1, 1, 2), (24, 3, 18), "d=19 is optimal"),
    row!(One, 7, 1, 1, (1, 1, 3), (8, 3, 6), "Y"),
    row!(One, 7, 1, 1, (2, 1, 3), (8, 5, 4), "Y"),
    row!(One, 7, 1, 1, (3, 1, 3), (8, 7, 2), "Y"),
    row!(One, 7, 1, 1, (1, 2, 3), (4, 3, 2), "Y"),
];

/// Family-2 codes over GF(3), GF(9), GF(7).
pub const TABLE_FAMILY_TWO: [TableRow; 5] = [
    row!(Two, 3, 1, 3, (1, 4, 2), (91, 6, 54), "57 <= d <= 58 is optimal"),
    row!(Two, 3, 2, 1, (1, 2, 8), (5, 2, 4), "Y"),
    row!(Two, 3, 2, 1, (2, 2, 8), (5, 4, 2), "Y"),
    row!(Two, 7, 1, 1, (1, 1, 3), (16, 2, 14), "Y"),
    row!(Two, 7, 1, 1, (2, 1, 3), (16, 4, 10), "d=11 is optimal"),
];

pub fn example(id: &str) -> Option<&'static ExampleFixture> {
    EXAMPLES.iter().find(|e| e.id == id)
}

pub fn table_rows() -> impl Iterator<Item = &'static TableRow> {
    TABLE_FAMILY_ONE.iter().chain(TABLE_FAMILY_TWO.iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::parse_enumerator;
    use crate::params::derive;
    use num_bigint::BigUint;

    #[test]
    fn fixtures_are_self_consistent() {
        for ex in &EXAMPLES {
            let en = parse_enumerator(ex.enumerator).unwrap();
            let total: BigUint = en.values().sum();
            assert_eq!(total, BigUint::from(ex.p.pow(ex.l)).pow(ex.nkd.1), "{}", ex.id);
            let d = en.keys().copied().find(|&w| w > 0).unwrap();
            assert_eq!(d, ex.nkd.2, "{}", ex.id);
            let derived = derive(&ex.spec()).unwrap();
            assert_eq!(derived.literal_exponents, ex.exponents, "{}", ex.id);
            assert_eq!((derived.n, derived.dimension), (ex.nkd.0, ex.nkd.1), "{}", ex.id);
        }
    }

    #[test]
    fn table_lengths_and_dimensions() {
        for row in table_rows() {
            let d = derive(&row.spec()).unwrap();
            assert_eq!((d.n, d.dimension), (row.nkd.0, row.nkd.1), "{}", row.id());
        }
        assert!(example("c1-q8-t1").is_some());
        assert!(example("nope").is_none());
    }
}
