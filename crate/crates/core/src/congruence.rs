//! The seven parametric residue-class families whose members carry explicit
//! polynomial solutions, their constructions, and coverage search.
//!
//! Four families produce Type I points and three produce Type II points.
//! Each family instance determines a congruence system on n - one or two
//! linear congruences, or a linear plus a quadratic one - and an explicit
//! formula turning any sufficiently large class member into a variety point.
//! Classical coverage: every primitive class mod 840 other than the six
//! squares {1,121,169,289,361,529} is contained in some small family.

use crate::sextuple::{check_sigma1, check_sigma2, SextupleI, SextupleII};
use crate::{Error, Result};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Residue class r mod q with 0 <= r < q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    pub r: u64,
    pub q: u64,
}

impl ResidueClass {
    pub fn new(r: u64, q: u64) -> Result<ResidueClass> {
        if q < 1 || r >= q {
            return Err(Error::InvalidArgument(format!(
                "residue class needs 0 <= r < q, got {r} mod {q}"
            )));
        }
        Ok(ResidueClass { r, q })
    }

    pub fn is_primitive(&self) -> bool {
        gcd(self.r, self.q) == 1 || self.q == 1
    }

    pub fn contains(&self, n: u64) -> bool {
        n % self.q == self.r
    }
}

impl std::fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} mod {}", self.r, self.q)
    }
}

/// Which of the seven parametric families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    IAdf,
    IAcf,
    ICdf,
    IAbe,
    IIAbe,
    IIAdf,
    IIAde,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 7] = [
        FamilyKind::IAdf,
        FamilyKind::IAcf,
        FamilyKind::ICdf,
        FamilyKind::IAbe,
        FamilyKind::IIAbe,
        FamilyKind::IIAdf,
        FamilyKind::IIAde,
    ];

    pub fn is_type1(&self) -> bool {
        matches!(
            self,
            FamilyKind::IAdf | FamilyKind::IAcf | FamilyKind::ICdf | FamilyKind::IAbe
        )
    }

    fn name(&self) -> &'static str {
        match self {
            FamilyKind::IAdf => "I-adf",
            FamilyKind::IAcf => "I-acf",
            FamilyKind::ICdf => "I-cdf",
            FamilyKind::IAbe => "I-abe",
            FamilyKind::IIAbe => "II-abe",
            FamilyKind::IIAdf => "II-adf",
            FamilyKind::IIAde => "II-ade",
        }
    }
}

/// A family instance: the kind plus its three named parameters, with the
/// side conditions of that kind already validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    pub kind: FamilyKind,
    pub params: [u64; 3],
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [p0, p1, p2] = self.params;
        write!(f, "{}({p0},{p1},{p2})", self.kind.name())
    }
}

impl Family {
    /// Validate side conditions and build the family.
    pub fn new(kind: FamilyKind, params: [u64; 3]) -> Result<Family> {
        let [p0, p1, p2] = params;
        if p0 == 0 || p1 == 0 || p2 == 0 {
            return Err(Error::InvalidArgument("family parameters must be >= 1".into()));
        }
        let ok = match kind {
            // (a,d,f), f | 4a^2 d + 1
            FamilyKind::IAdf => (4 * p0 * p0 * p1 + 1) % p2 == 0,
            // (a,c,f), gcd(4ac, f) = 1
            FamilyKind::IAcf => gcd(4 * p0 * p1, p2) == 1,
            // (c,d,f), gcd(4cd, f) = 1
            FamilyKind::ICdf => gcd(4 * p0 * p1, p2) == 1,
            // (a,b,e), e | a+b and gcd(e, 4ab) = 1
            FamilyKind::IAbe | FamilyKind::IIAbe => {
                (p0 + p1) % p2 == 0 && gcd(p2, 4 * p0 * p1) == 1
            }
            // (a,d,f), 4ad | f + 1
            FamilyKind::IIAdf => (p2 + 1) % (4 * p0 * p1) == 0,
            // (a,d,e), gcd(4ad, e) = 1
            FamilyKind::IIAde => gcd(4 * p0 * p1, p2) == 1,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "side conditions of {} fail for {params:?}",
                kind.name()
            )));
        }
        Ok(Family { kind, params })
    }
}

/// The congruence system a family imposes on n: one or two simultaneous
/// linear congruences, possibly together with a quadratic one
/// (n^2 = s mod t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSystem {
    pub linear: Vec<ResidueClass>,
    pub quadratic: Option<(u64, u64)>,
}

impl ClassSystem {
    pub fn contains(&self, n: u64) -> bool {
        self.linear.iter().all(|rc| rc.contains(n))
            && self.quadratic.is_none_or(|(s, t)| {
                let nm = (n % t) as u128;
                (nm * nm % t as u128) as u64 == s
            })
    }

    /// Whole-class containment: every member of `rc` satisfies the system.
    /// A linear congruence s mod t contains r mod q iff t | q and r = s mod t;
    /// the quadratic condition is scanned over the gcd coset.
    pub fn contains_class(&self, rc: &ResidueClass) -> bool {
        for lin in &self.linear {
            if rc.q % lin.q != 0 || rc.r % lin.q != lin.r {
                return false;
            }
        }
        if let Some((s, t)) = self.quadratic {
            let g = gcd(rc.q % t, t);
            let steps = t / g;
            for j in 0..steps {
                let v = ((rc.r as u128 + g as u128 * j as u128) % t as u128) as u64;
                if (v as u128 * v as u128 % t as u128) as u64 != s {
                    return false;
                }
            }
        }
        true
    }
}

fn modinv(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

fn neg_mod(v: u64, m: u64) -> u64 {
    (m - v % m) % m
}

/// The exact congruence system of the family's defining bullet.
pub fn family_classes(fam: &Family) -> Result<ClassSystem> {
    let [p0, p1, p2] = fam.params.map(|v| v as u128);
    let sys = match fam.kind {
        FamilyKind::IAdf => {
            // n = -f mod 4ad
            let m = (4 * p0 * p1) as u64;
            ClassSystem {
                linear: vec![ResidueClass::new(neg_mod(fam.params[2], m), m)?],
                quadratic: None,
            }
        }
        FamilyKind::IAcf => {
            // n = -f mod 4ac and n = -c/a mod f
            let m = (4 * p0 * p1) as u64;
            let f = fam.params[2];
            let mut linear = vec![ResidueClass::new(neg_mod(fam.params[2], m), m)?];
            if f > 1 {
                let ainv = modinv(fam.params[0], f).ok_or_else(|| {
                    Error::InvalidArgument("a not invertible mod f".into())
                })?;
                let c_over_a = (p1 % f as u128 * ainv as u128 % f as u128) as u64;
                linear.push(ResidueClass::new(neg_mod(c_over_a, f), f)?);
            }
            ClassSystem {
                linear,
                quadratic: None,
            }
        }
        FamilyKind::ICdf => {
            // n = -f mod 4cd and n^2 = -4c^2 d mod f
            let m = (4 * p0 * p1) as u64;
            let f = fam.params[2];
            let linear = vec![ResidueClass::new(neg_mod(fam.params[2], m), m)?];
            let quadratic = if f > 1 {
                let s = neg_mod(((4 * p0 * p0 * p1) % f as u128) as u64, f);
                Some((s, f))
            } else {
                None
            };
            ClassSystem { linear, quadratic }
        }
        FamilyKind::IAbe => {
            // n = -1/e mod 4ab
            let m = (4 * p0 * p1) as u64;
            let einv = modinv(fam.params[2], m)
                .ok_or_else(|| Error::InvalidArgument("e not invertible mod 4ab".into()))?;
            ClassSystem {
                linear: vec![ResidueClass::new(neg_mod(einv, m), m)?],
                quadratic: None,
            }
        }
        FamilyKind::IIAbe => {
            // n = -e mod 4ab
            let m = (4 * p0 * p1) as u64;
            ClassSystem {
                linear: vec![ResidueClass::new(neg_mod(fam.params[2], m), m)?],
                quadratic: None,
            }
        }
        FamilyKind::IIAdf => {
            // n = -4a^2 d mod f
            let f = fam.params[2];
            let s = neg_mod(((4 * p0 * p0 * p1) % f as u128) as u64, f);
            ClassSystem {
                linear: vec![ResidueClass::new(s, f)?],
                quadratic: None,
            }
        }
        FamilyKind::IIAde => {
            // n = -4a^2 d - e mod 4ade
            let m = (4 * p0 * p1 * p2) as u64;
            let v = ((4 * p0 * p0 * p1 + p2) % m as u128) as u64;
            ClassSystem {
                linear: vec![ResidueClass::new(neg_mod(v, m), m)?],
                quadratic: None,
            }
        }
    };
    Ok(sys)
}

fn exact(num: u128, den: u128) -> Option<u128> {
    if den != 0 && num % den == 0 && num / den >= 1 {
        Some(num / den)
    } else {
        None
    }
}

/// Instantiate a Type I family at n; n must lie in the family's class and be
/// large enough that every coordinate is a positive integer.
pub fn construct1(fam: &Family, n: u64) -> Result<SextupleI> {
    if !fam.kind.is_type1() {
        return Err(Error::InvalidArgument(format!(
            "{} is not a Type I family",
            fam.kind.name()
        )));
    }
    let nn = n as u128;
    let [p0, p1, p2] = fam.params.map(|v| v as u128);
    let build = || -> Option<SextupleI> {
        match fam.kind {
            FamilyKind::IAdf => {
                let (a, d, f) = (p0, p1, p2);
                let e = exact(4 * a * a * d + 1, f)?;
                let c = exact(nn + f, 4 * a * d)?;
                let b = (c * e).checked_sub(a).filter(|&b| b >= 1)?;
                Some(SextupleI::new(a, b, c, d, e, f))
            }
            FamilyKind::IAcf => {
                let (a, c, f) = (p0, p1, p2);
                let b = exact(nn * a + c, f)?;
                let d = exact(nn + f, 4 * a * c)?;
                let e = exact(nn * a + a * f + c, f * c)?;
                Some(SextupleI::new(a, b, c, d, e, f))
            }
            FamilyKind::ICdf => {
                let (c, d, f) = (p0, p1, p2);
                let a = exact(nn + f, 4 * c * d)?;
                let b = exact(nn * nn + 4 * c * c * d + nn * f, 4 * c * d * f)?;
                let e = exact((nn + f) * (nn + f) + 4 * c * c * d, 4 * c * c * d * f)?;
                Some(SextupleI::new(a, b, c, d, e, f))
            }
            FamilyKind::IAbe => {
                let (a, b, e) = (p0, p1, p2);
                let c = exact(a + b, e)?;
                let d = exact(nn * e + 1, 4 * a * b)?;
                let f = (4 * a * c * d).checked_sub(nn).filter(|&f| f >= 1)?;
                Some(SextupleI::new(a, b, c, d, e, f))
            }
            _ => unreachable!(),
        }
    };
    let s = build().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "{fam} does not instantiate at n={n} (class mismatch or below threshold)"
        ))
    })?;
    let bad = check_sigma1(n, &s);
    if !bad.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{fam} at n={n} violates constraints {bad:?}"
        )));
    }
    Ok(s)
}

/// Instantiate a Type II family at n.
pub fn construct2(fam: &Family, n: u64) -> Result<SextupleII> {
    if fam.kind.is_type1() {
        return Err(Error::InvalidArgument(format!(
            "{} is not a Type II family",
            fam.kind.name()
        )));
    }
    let nn = n as u128;
    let [p0, p1, p2] = fam.params.map(|v| v as u128);
    let build = || -> Option<SextupleII> {
        match fam.kind {
            FamilyKind::IIAbe => {
                let (a, b, e) = (p0, p1, p2);
                let c = exact(a + b, e)?;
                let d = exact(nn + e, 4 * a * b)?;
                let f = exact(c * (nn + e), b)?.checked_sub(1).filter(|&f| f >= 1)?;
                Some(SextupleII::new(a, b, c, d, e, f))
            }
            FamilyKind::IIAdf => {
                let (a, d, f) = (p0, p1, p2);
                let c = exact(f + 1, 4 * a * d)?;
                let e = exact(nn + 4 * a * a * d, f)?;
                let b = (c * e).checked_sub(a).filter(|&b| b >= 1)?;
                Some(SextupleII::new(a, b, c, d, e, f))
            }
            FamilyKind::IIAde => {
                let (a, d, e) = (p0, p1, p2);
                let b = exact(nn + e, 4 * a * d)?;
                let c = exact(nn + 4 * a * a * d + e, 4 * a * d * e)?;
                let f = exact(nn + 4 * a * a * d, e)?;
                Some(SextupleII::new(a, b, c, d, e, f))
            }
            _ => unreachable!(),
        }
    };
    let s = build().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "{fam} does not instantiate at n={n} (class mismatch or below threshold)"
        ))
    })?;
    let bad = check_sigma2(n, &s);
    if !bad.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{fam} at n={n} violates constraints {bad:?}"
        )));
    }
    Ok(s)
}

/// Least n in the family's class at which the construction succeeds.  The
/// threshold is found by scanning class members, never hard-coded.
///
/// Families whose congruence system has no solutions at all (a quadratic
/// condition can be empty, e.g. n^2 = 2 mod 3) are reported as errors.
pub fn construction_threshold(fam: &Family) -> Result<u64> {
    let sys = family_classes(fam)?;
    // the system is periodic mod the lcm of its moduli; scan one period
    let mut period = 1u64;
    let moduli = sys
        .linear
        .iter()
        .map(|rc| rc.q)
        .chain(sys.quadratic.map(|(_, t)| t));
    for m in moduli {
        let g = gcd(period, m);
        period = period
            .checked_mul(m / g)
            .filter(|&p| p <= 100_000_000)
            .ok_or_else(|| Error::InvalidArgument(format!("{fam}: period too large")))?;
    }
    if !(0..period).any(|r| sys.contains(r)) {
        return Err(Error::InvalidArgument(format!(
            "{fam}: the congruence system has no members"
        )));
    }
    let mut tries = 0;
    for n in 1..u64::MAX {
        if !sys.contains(n) {
            continue;
        }
        let ok = if fam.kind.is_type1() {
            construct1(fam, n).is_ok()
        } else {
            construct2(fam, n).is_ok()
        };
        if ok {
            return Ok(n);
        }
        tries += 1;
        if tries > 64 {
            break;
        }
    }
    Err(Error::InvalidArgument(format!(
        "{fam}: no instantiable n found within the scan budget"
    )))
}

/// All valid family instances with parameters bounded by `param_bound`.
pub fn families_up_to(param_bound: u64) -> Vec<Family> {
    let mut out = Vec::new();
    for kind in FamilyKind::ALL {
        for p0 in 1..=param_bound {
            for p1 in 1..=param_bound {
                match kind {
                    FamilyKind::IAdf => {
                        // f ranges over divisors of 4a^2 d + 1
                        let target = 4 * p0 * p0 * p1 + 1;
                        for f in 1..=param_bound {
                            if target % f == 0 {
                                out.push(Family { kind, params: [p0, p1, f] });
                            }
                        }
                    }
                    _ => {
                        for p2 in 1..=param_bound {
                            if let Ok(fam) = Family::new(kind, [p0, p1, p2]) {
                                out.push(fam);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Search for a family (parameters <= param_bound) whose class system
/// contains the whole class rc.
pub fn cover_search(rc: &ResidueClass, param_bound: u64) -> Option<Family> {
    for fam in families_up_to(param_bound) {
        if let Ok(sys) = family_classes(&fam) {
            if sys.contains_class(rc) {
                return Some(fam);
            }
        }
    }
    None
}

/// Coverage partition of the primitive classes mod 840.
#[derive(Debug, Clone)]
pub struct Mod840Report {
    pub covered: Vec<(u64, Family)>,
    pub uncovered: Vec<u64>,
}

pub fn mod840_report(param_bound: u64) -> Mod840Report {
    let fams = families_up_to(param_bound);
    let systems: Vec<(Family, ClassSystem)> = fams
        .into_iter()
        .filter_map(|f| family_classes(&f).ok().map(|s| (f, s)))
        .collect();
    let mut covered = Vec::new();
    let mut uncovered = Vec::new();
    for r in 1..840u64 {
        if gcd(r, 840) != 1 {
            continue;
        }
        let rc = ResidueClass::new(r, 840).unwrap();
        match systems.iter().find(|(_, sys)| sys.contains_class(&rc)) {
            Some((fam, _)) => covered.push((r, *fam)),
            None => uncovered.push(r),
        }
    }
    Mod840Report { covered, uncovered }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sextuple::{project1, project2, SolutionTag};

    #[test]
    fn family_class_examples() {
        // I-adf (1,1,5): n = -5 = 3 mod 4
        let fam = Family::new(FamilyKind::IAdf, [1, 1, 5]).unwrap();
        let sys = family_classes(&fam).unwrap();
        assert_eq!(sys.linear, vec![ResidueClass::new(3, 4).unwrap()]);
        // II-ade (1,1,1): n = -4-1 = 3 mod 4
        let fam = Family::new(FamilyKind::IIAde, [1, 1, 1]).unwrap();
        let sys = family_classes(&fam).unwrap();
        assert_eq!(sys.linear, vec![ResidueClass::new(3, 4).unwrap()]);
        // I-adf (1,1,1): 1 | 5, n = -1 = 3 mod 4
        let fam = Family::new(FamilyKind::IAdf, [1, 1, 1]).unwrap();
        let sys = family_classes(&fam).unwrap();
        assert_eq!(sys.linear, vec![ResidueClass::new(3, 4).unwrap()]);
    }

    #[test]
    fn family_side_conditions() {
        assert!(Family::new(FamilyKind::IAdf, [1, 1, 5]).is_ok());
        assert!(Family::new(FamilyKind::IAdf, [1, 1, 3]).is_err()); // 3 does not divide 5
        assert!(Family::new(FamilyKind::IIAbe, [1, 1, 2]).is_err()); // e=2 not coprime to 4ab
        assert!(Family::new(FamilyKind::IIAdf, [1, 1, 3]).is_ok()); // 4 | 3+1
        assert!(Family::new(FamilyKind::IIAdf, [1, 1, 4]).is_err());
    }

    #[test]
    fn construct1_examples() {
        let fam = Family::new(FamilyKind::IAdf, [1, 1, 5]).unwrap();
        let s = construct1(&fam, 3).unwrap();
        assert_eq!(s, SextupleI::new(1, 1, 2, 1, 1, 5));
        // below class: n=2 is not 3 mod 4
        assert!(construct1(&fam, 2).is_err());

        let fam = Family::new(FamilyKind::IAbe, [1, 1, 1]).unwrap();
        let s = construct1(&fam, 3).unwrap();
        assert_eq!(s, SextupleI::new(1, 1, 2, 1, 1, 5));
        let sol = project1(3, &s).unwrap();
        assert_eq!(sol.tag, SolutionTag::TypeI);
    }

    #[test]
    fn construct2_examples() {
        let fam = Family::new(FamilyKind::IIAde, [1, 1, 1]).unwrap();
        let s = construct2(&fam, 3).unwrap();
        assert_eq!(s, SextupleII::new(1, 1, 2, 1, 1, 7));
        let sol = project2(3, &s).unwrap();
        assert_eq!((sol.x, sol.y, sol.z), (1, 6, 6));

        let fam = Family::new(FamilyKind::IIAdf, [1, 1, 3]).unwrap();
        let s = construct2(&fam, 5).unwrap();
        assert!(check_sigma2(5, &s).is_empty());
        let sol = project2(5, &s).unwrap();
        assert_eq!((sol.x, sol.y, sol.z), (2, 5, 10));
    }

    #[test]
    fn cover_search_examples() {
        let rc = ResidueClass::new(3, 4).unwrap();
        assert!(cover_search(&rc, 10).is_some());
        let rc = ResidueClass::new(2, 3).unwrap();
        assert!(cover_search(&rc, 10).is_some());
        // the square class 1 mod 840 is never covered
        let rc = ResidueClass::new(1, 840).unwrap();
        assert!(cover_search(&rc, 12).is_none());
    }

    #[test]
    fn thresholds_are_computed() {
        let fam = Family::new(FamilyKind::IIAde, [1, 1, 1]).unwrap();
        assert_eq!(construction_threshold(&fam).unwrap(), 3);
        let fam = Family::new(FamilyKind::IAdf, [1, 1, 5]).unwrap();
        assert_eq!(construction_threshold(&fam).unwrap(), 3);
    }

    #[test]
    fn mod840_totient() {
        let rep = mod840_report(6);
        assert_eq!(rep.covered.len() + rep.uncovered.len(), 192);
    }
}
