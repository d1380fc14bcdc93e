//! Dirichlet characters mod q: group structure, enumeration, evaluation,
//! conductor resolution, parity, and Gauss sums.
//!
//! (Z/qZ)^x is decomposed by CRT over the prime-power factors of q, with the
//! 2-adic part split as <-1> x <5> when 8 | q. Characters are indexed by
//! exponent tuples against the resulting generators, and their values are
//! kept both as exact roots of unity (rational angles) and as complex
//! doubles, so multiplicativity and conductor logic run exactly.

use num_complex::Complex64;

use crate::arith::{factorize, gcd, totient};
use crate::error::{Error, Result};

/// A root of unity stored as an exact angle `num/den` of a full turn,
/// reduced, with 0 <= num < den.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalAngle {
    num: u64,
    den: u64,
}

impl RationalAngle {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let num = num % den;
        let g = gcd(num, den);
        if num == 0 {
            RationalAngle { num: 0, den: 1 }
        } else {
            RationalAngle { num: num / g, den: den / g }
        }
    }

    pub fn zero() -> Self {
        RationalAngle { num: 0, den: 1 }
    }

    /// Angle addition modulo a full turn (= multiplication of the roots).
    pub fn add(self, other: Self) -> Self {
        let den = self.den / gcd(self.den, other.den) * other.den;
        let num = self.num * (den / self.den) + other.num * (den / other.den);
        RationalAngle::new(num, den)
    }

    pub fn conj(self) -> Self {
        RationalAngle::new(self.den - self.num, self.den)
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// True for angles 0 and 1/2, the real roots.
    pub fn is_real(self) -> bool {
        self.den <= 2
    }

    pub fn numer(self) -> u64 {
        self.num
    }

    pub fn denom(self) -> u64 {
        self.den
    }

    pub fn to_complex(self) -> Complex64 {
        match (self.num, self.den) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            (n, d) => {
                let theta = 2.0 * std::f64::consts::PI * (n as f64) / (d as f64);
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Component {
    /// Generator lifted to a residue mod q (== local generator mod p^e, == 1
    /// elsewhere).
    generator: u64,
    order: u64,
    /// Local modulus p^e this component acts on.
    local_modulus: u64,
    /// Discrete logs of the local units, indexed by residue mod p^e.
    local_dlog: Vec<u32>,
}

/// The unit group (Z/qZ)^x with generators and discrete logarithms.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    modulus: u64,
    phi: u64,
    components: Vec<Component>,
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Smallest primitive root mod p^e for odd prime p.
fn primitive_root_odd(p: u64, e: u32) -> u64 {
    let phi_p = p - 1;
    let factors = factorize(phi_p).expect("p - 1 >= 1");
    let mut g = 2u64;
    loop {
        let ok = factors
            .factors
            .iter()
            .all(|&(r, _)| pow_mod(g, phi_p / r, p) != 1);
        if ok {
            break;
        }
        g += 1;
    }
    if e == 1 {
        return g;
    }
    // g is primitive mod p^e iff g^{p-1} != 1 mod p^2
    let p2 = p * p;
    if pow_mod(g, p - 1, p2) == 1 {
        g += p;
    }
    g
}

/// CRT lift: x == a mod m, x == 1 mod (q/m).
fn crt_lift(a: u64, m: u64, q: u64) -> u64 {
    let n = q / m;
    if n == 1 {
        return a % q;
    }
    // x = a + m * t with m t == 1 - a (mod n)
    let minv = mod_inverse(m % n, n);
    let rhs = ((1 + n as i128 - (a % n) as i128) % n as i128) as u64 % n;
    let t = (minv as u128 * rhs as u128 % n as u128) as u64;
    (a as u128 + m as u128 * t as u128) as u64 % q
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    // extended Euclid; gcd(a, n) = 1
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    debug_assert_eq!(r0, 1);
    (s0.rem_euclid(n as i128)) as u64
}

impl CharacterGroup {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// Generator residues with their orders, in component order.
    pub fn generators(&self) -> Vec<(u64, u64)> {
        self.components.iter().map(|c| (c.generator, c.order)).collect()
    }

    pub fn is_unit(&self, n: u64) -> bool {
        gcd(n % self.modulus, self.modulus) == 1
    }

    /// Exponent vector of a unit residue against the generators.
    pub fn dlog(&self, n: u64) -> Option<Vec<u32>> {
        let n = n % self.modulus;
        if !self.is_unit(n) {
            return None;
        }
        Some(
            self.components
                .iter()
                .map(|c| c.local_dlog[(n % c.local_modulus) as usize])
                .collect(),
        )
    }
}

/// Decompose (Z/qZ)^x.
pub fn build_group(q: u64) -> Result<CharacterGroup> {
    if q == 0 {
        return Err(Error::domain("modulus must be >= 1"));
    }
    if q > 1_000_000 {
        return Err(Error::domain(format!("modulus {q} exceeds the supported bound 10^6")));
    }
    let mut components = Vec::new();
    for &(p, e) in &factorize(q)?.factors {
        let pe = p.pow(e);
        if p == 2 {
            match e {
                1 => {} // trivial group
                2 => components.push(make_cyclic_component(3, 2, pe, q)),
                _ => {
                    // <-1> x <5>: fill both discrete-log tables over the product
                    let half = pe / 4;
                    let mut dlog_minus = vec![u32::MAX; pe as usize];
                    let mut dlog_five = vec![u32::MAX; pe as usize];
                    for x0 in 0..2u64 {
                        let sign = pow_mod(pe - 1, x0, pe);
                        let mut x = sign;
                        for x1 in 0..half {
                            dlog_minus[x as usize] = x0 as u32;
                            dlog_five[x as usize] = x1 as u32;
                            x = (x as u128 * 5 % pe as u128) as u64;
                        }
                    }
                    components.push(Component {
                        generator: crt_lift(pe - 1, pe, q),
                        order: 2,
                        local_modulus: pe,
                        local_dlog: dlog_minus,
                    });
                    components.push(Component {
                        generator: crt_lift(5, pe, q),
                        order: half,
                        local_modulus: pe,
                        local_dlog: dlog_five,
                    });
                }
            }
        } else {
            let g = primitive_root_odd(p, e);
            let order = pe / p * (p - 1);
            components.push(make_cyclic_component(g, order, pe, q));
        }
    }
    Ok(CharacterGroup {
        modulus: q,
        phi: totient(q)?,
        components,
    })
}

fn make_cyclic_component(local_gen: u64, order: u64, pe: u64, q: u64) -> Component {
    let mut local_dlog = vec![u32::MAX; pe as usize];
    let mut x = 1u64;
    for k in 0..order {
        local_dlog[x as usize] = k as u32;
        x = (x as u128 * local_gen as u128 % pe as u128) as u64;
    }
    Component {
        generator: crt_lift(local_gen, pe, q),
        order,
        local_modulus: pe,
        local_dlog,
    }
}

/// A Dirichlet character mod q with exact values.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    index: Vec<u32>,
    orders: Vec<u64>,
    /// angle of chi(n) per residue; None on non-units
    angles: Vec<Option<RationalAngle>>,
    values: Vec<Complex64>,
    kappa: u8,
    conductor: u64,
    principal: bool,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> &[u32] {
        &self.index
    }

    pub fn is_principal(&self) -> bool {
        self.principal
    }

    /// Parity: 0 if chi(-1) = 1, else 1.
    pub fn kappa(&self) -> u8 {
        self.kappa
    }

    pub fn conductor_modulus(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_real(&self) -> bool {
        self.angles
            .iter()
            .flatten()
            .all(|a| a.is_real())
    }

    /// chi(n) as a complex double; 0 on non-units.
    pub fn eval(&self, n: i64) -> Complex64 {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        self.values[r]
    }

    /// Exact angle of chi(n), None on non-units.
    pub fn angle(&self, n: i64) -> Option<RationalAngle> {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        self.angles[r]
    }

    /// The conjugate character.
    pub fn conjugate(&self) -> DirichletCharacter {
        let index: Vec<u32> = self
            .index
            .iter()
            .zip(&self.orders)
            .map(|(&c, &ord)| if c == 0 { 0 } else { (ord - c as u64) as u32 })
            .collect();
        DirichletCharacter {
            modulus: self.modulus,
            index,
            orders: self.orders.clone(),
            angles: self.angles.iter().map(|a| a.map(RationalAngle::conj)).collect(),
            values: self.values.iter().map(Complex64::conj).collect(),
            kappa: self.kappa,
            conductor: self.conductor,
            principal: self.principal,
        }
    }

    /// Label "q.k" with k the position in enumeration order.
    pub fn label(&self) -> String {
        format!("{}.{}", self.modulus, self.enumeration_position())
    }

    fn enumeration_position(&self) -> u64 {
        // mixed-radix value of the exponent tuple, most significant first
        let mut pos = 0u64;
        for (&c, &ord) in self.index.iter().zip(&self.orders) {
            pos = pos * ord + c as u64;
        }
        pos
    }
}

/// Build the character with the given exponent tuple.
pub fn character(group: &CharacterGroup, index: &[u32]) -> Result<DirichletCharacter> {
    if index.len() != group.components.len() {
        return Err(Error::domain(format!(
            "index tuple length {} != number of generators {}",
            index.len(),
            group.components.len()
        )));
    }
    for (c, comp) in index.iter().zip(&group.components) {
        if *c as u64 >= comp.order {
            return Err(Error::domain(format!(
                "exponent {c} out of range for generator of order {}",
                comp.order
            )));
        }
    }
    let q = group.modulus;
    let mut angles: Vec<Option<RationalAngle>> = vec![None; q as usize];
    let mut values = vec![Complex64::new(0.0, 0.0); q as usize];
    if q == 1 {
        // the character mod 1 is identically 1
        angles[0] = Some(RationalAngle::zero());
        values[0] = Complex64::new(1.0, 0.0);
    }
    for n in 1..q {
        if gcd(n, q) != 1 {
            continue;
        }
        let mut angle = RationalAngle::zero();
        for (comp, &c) in group.components.iter().zip(index) {
            let d = comp.local_dlog[(n % comp.local_modulus) as usize] as u64;
            angle = angle.add(RationalAngle::new(c as u64 * d % comp.order, comp.order));
        }
        angles[n as usize] = Some(angle);
        values[n as usize] = angle.to_complex();
    }
    let principal = index.iter().all(|&c| c == 0);
    let kappa = if q <= 2 {
        0
    } else {
        match angles[(q - 1) as usize] {
            Some(a) if a.is_zero() => 0,
            _ => 1,
        }
    };
    let orders: Vec<u64> = group.components.iter().map(|c| c.order).collect();
    let mut chi = DirichletCharacter {
        modulus: q,
        index: index.to_vec(),
        orders,
        angles,
        values,
        kappa,
        conductor: 1,
        principal,
    };
    chi.conductor = find_conductor(&chi);
    Ok(chi)
}

fn find_conductor(chi: &DirichletCharacter) -> u64 {
    let q = chi.modulus;
    if q == 1 {
        return 1;
    }
    let mut divisors: Vec<u64> = Vec::new();
    let mut d = 1;
    while d * d <= q {
        if q % d == 0 {
            divisors.push(d);
            if d != q / d {
                divisors.push(q / d);
            }
        }
        d += 1;
    }
    divisors.sort_unstable();
    'outer: for &d in &divisors {
        // chi is induced mod d iff chi(n) = 1 for all units n == 1 (mod d)
        let mut n = 1u64;
        while n < q {
            if gcd(n, q) == 1 {
                if let Some(a) = chi.angles[n as usize] {
                    if !a.is_zero() {
                        continue 'outer;
                    }
                }
            }
            n += d;
        }
        return d;
    }
    q
}

/// All phi(q) characters, principal first, lexicographic exponent tuples.
pub fn enumerate_characters(group: &CharacterGroup) -> Result<Vec<DirichletCharacter>> {
    let orders: Vec<u64> = group.components.iter().map(|c| c.order).collect();
    let total: u64 = orders.iter().product();
    debug_assert_eq!(total, group.phi);
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..total {
        out.push(character(group, &index_tuple(k, &orders))?);
    }
    Ok(out)
}

fn index_tuple(mut k: u64, orders: &[u64]) -> Vec<u32> {
    let mut tuple = vec![0u32; orders.len()];
    for i in (0..orders.len()).rev() {
        tuple[i] = (k % orders[i]) as u32;
        k /= orders[i];
    }
    tuple
}

/// The k-th character in enumeration order.
pub fn character_by_position(group: &CharacterGroup, k: u64) -> Result<DirichletCharacter> {
    if k >= group.phi {
        return Err(Error::domain(format!(
            "character index {k} out of range; modulus {} has {} characters",
            group.modulus, group.phi
        )));
    }
    let orders: Vec<u64> = group.components.iter().map(|c| c.order).collect();
    character(group, &index_tuple(k, &orders))
}

/// Parse a "q.k" character label.
pub fn parse_label(label: &str) -> Result<(u64, u64)> {
    let mut it = label.splitn(2, '.');
    let q = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::domain(format!("bad character label `{label}`")))?;
    let k = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::domain(format!("bad character label `{label}` (want q.index)")))?;
    Ok((q, k))
}

pub fn character_from_label(label: &str) -> Result<DirichletCharacter> {
    let (q, k) = parse_label(label)?;
    let group = build_group(q)?;
    character_by_position(&group, k)
}

/// The primitive character chi* mod q* inducing chi.
pub fn conductor(chi: &DirichletCharacter) -> Result<(u64, DirichletCharacter)> {
    let q_star = chi.conductor;
    if q_star == chi.modulus {
        return Ok((q_star, chi.clone()));
    }
    let q = chi.modulus;
    let star_group = build_group(q_star)?;
    // determine the index of chi* from its values on the generators of the
    // smaller group, lifting each generator to a residue coprime to q
    let mut index = Vec::with_capacity(star_group.components.len());
    for comp in &star_group.components {
        let mut lift = comp.generator % q_star;
        while gcd(lift, q) != 1 {
            lift += q_star;
        }
        let angle = chi.angles[(lift % q) as usize].expect("lift is a unit");
        // angle = c / order exactly
        debug_assert_eq!((angle.numer() * comp.order) % angle.denom(), 0);
        let c = if angle.is_zero() {
            0
        } else {
            angle.numer() * (comp.order / angle.denom())
        };
        index.push(c as u32);
    }
    let chi_star = character(&star_group, &index)?;
    Ok((q_star, chi_star))
}

/// How a Gauss sum value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussSumMethod {
    Direct,
    InducedFormula,
}

#[derive(Debug, Clone)]
pub struct GaussSumValue {
    pub chi_label: String,
    pub value: Complex64,
    pub method: GaussSumMethod,
}

/// tau(chi) = sum_{a=1}^{q} chi(a) e(a/q), computed directly.
pub fn gauss_sum(chi: &DirichletCharacter) -> GaussSumValue {
    let q = chi.modulus;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        let chi_a = chi.values[(a % q) as usize];
        if chi_a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let theta = 2.0 * std::f64::consts::PI * (a as f64) / (q as f64);
        let term = chi_a * Complex64::new(theta.cos(), theta.sin());
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    GaussSumValue {
        chi_label: chi.label(),
        value: sum,
        method: GaussSumMethod::Direct,
    }
}

/// tau(chi) via tau(chi) = mu(q/q*) chi*(q/q*) tau(chi*).
pub fn gauss_sum_induced(chi: &DirichletCharacter) -> Result<GaussSumValue> {
    let (q_star, chi_star) = conductor(chi)?;
    let ratio = chi.modulus / q_star;
    let mu = crate::arith::mobius(ratio)? as f64;
    let tau_star = gauss_sum(&chi_star).value;
    let value = mu * chi_star.eval(ratio as i64) * tau_star;
    Ok(GaussSumValue {
        chi_label: chi.label(),
        value,
        method: GaussSumMethod::InducedFormula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_group() {
        let g = build_group(1).unwrap();
        assert_eq!(g.phi(), 1);
        let chars = enumerate_characters(&g).unwrap();
        assert_eq!(chars.len(), 1);
        for n in 0..5i64 {
            assert_eq!(chars[0].eval(n), c(1.0, 0.0));
        }
    }

    #[test]
    fn group_mod_5() {
        let g = build_group(5).unwrap();
        let gens = g.generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0], (2, 4));
    }

    #[test]
    fn group_mod_8() {
        let g = build_group(8).unwrap();
        let gens = g.generators();
        // <-1> x <5>, derived by enumerating the units of Z/8Z
        assert_eq!(gens, vec![(7, 2), (5, 2)]);
        // every unit has a unique exponent vector that reconstructs it
        let mut seen = std::collections::HashSet::new();
        for n in [1u64, 3, 5, 7] {
            let ex = g.dlog(n).unwrap();
            assert!(seen.insert(ex.clone()));
            let rec = gens
                .iter()
                .zip(&ex)
                .fold(1u64, |acc, (&(gen, _), &e)| acc * pow_mod(gen, e as u64, 8) % 8);
            assert_eq!(rec, n);
        }
    }

    #[test]
    fn generator_orders_multiply_to_phi() {
        for q in 1..=240u64 {
            let g = build_group(q).unwrap();
            let prod: u64 = g.generators().iter().map(|&(_, o)| o).product();
            assert_eq!(prod, g.phi(), "q={q}");
        }
    }

    #[test]
    fn enumerate_mod_5() {
        let g = build_group(5).unwrap();
        let chars = enumerate_characters(&g).unwrap();
        assert_eq!(chars.len(), 4);
        assert!(chars[0].is_principal());
        let real_nonprincipal: Vec<_> =
            chars.iter().filter(|ch| !ch.is_principal() && ch.is_real()).collect();
        assert_eq!(real_nonprincipal.len(), 1);
        assert_eq!(real_nonprincipal[0].label(), "5.2");
        // chi(2) = -1 for the quadratic character (2 is a non-residue mod 5)
        assert_eq!(real_nonprincipal[0].eval(2), c(-1.0, 0.0));
    }

    #[test]
    fn enumerate_mod_12_all_real() {
        let g = build_group(12).unwrap();
        let chars = enumerate_characters(&g).unwrap();
        assert_eq!(chars.len(), 4);
        assert!(chars.iter().all(|ch| ch.is_real()));
    }

    #[test]
    fn evaluation_examples() {
        let g = build_group(5).unwrap();
        let chars = enumerate_characters(&g).unwrap();
        assert_eq!(chars[0].eval(7), c(1.0, 0.0)); // principal at unit
        for ch in &chars {
            assert_eq!(ch.eval(10), c(0.0, 0.0)); // gcd > 1
        }
    }

    #[test]
    fn multiplicativity_exact() {
        for q in [5u64, 8, 9, 12, 15, 16, 24, 35, 40] {
            let g = build_group(q).unwrap();
            for ch in enumerate_characters(&g).unwrap() {
                for m in 1..q {
                    for n in 1..q {
                        match (ch.angle(m as i64), ch.angle(n as i64), ch.angle((m * n) as i64)) {
                            (Some(am), Some(an), Some(amn)) => {
                                assert_eq!(am.add(an), amn, "q={q} chi={} m={m} n={n}", ch.label());
                            }
                            (None, _, _) | (_, None, _) => {
                                assert!(ch.angle((m * n) as i64).is_none());
                            }
                            _ => unreachable!(),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parity_matches_minus_one() {
        for q in [3u64, 4, 5, 7, 8, 12, 15] {
            let g = build_group(q).unwrap();
            for ch in enumerate_characters(&g).unwrap() {
                let v = ch.eval(-1);
                let expect = if ch.kappa() == 0 { 1.0 } else { -1.0 };
                assert!((v - c(expect, 0.0)).norm() < 1e-14, "q={q} chi={}", ch.label());
            }
        }
    }

    #[test]
    fn conductor_examples() {
        // principal mod 6 -> q* = 1
        let g6 = build_group(6).unwrap();
        let principal = character_by_position(&g6, 0).unwrap();
        assert_eq!(conductor(&principal).unwrap().0, 1);

        // primitive real mod 5 stays itself
        let chi5 = character_from_label("5.2").unwrap();
        let (qs, chi_star) = conductor(&chi5).unwrap();
        assert_eq!(qs, 5);
        assert_eq!(chi_star.index(), chi5.index());

        // real character mod 15 induced from mod 5: constant on classes mod 5
        let g15 = build_group(15).unwrap();
        let induced = enumerate_characters(&g15)
            .unwrap()
            .into_iter()
            .find(|ch| {
                !ch.is_principal()
                    && (1..15)
                        .filter(|&n| gcd(n, 15) == 1)
                        .all(|n| ch.angle(n as i64) == chi5.angle(n as i64))
            })
            .expect("induced character exists");
        let (qs, chi_star) = conductor(&induced).unwrap();
        assert_eq!(qs, 5);
        for n in 1..5i64 {
            assert_eq!(chi_star.angle(n), chi5.angle(n));
        }
    }

    #[test]
    fn gauss_sum_examples() {
        // principal mod 4: tau = mu(4) = 0
        let g4 = build_group(4).unwrap();
        let tau0 = gauss_sum(&character_by_position(&g4, 0).unwrap());
        assert!(tau0.value.norm() < 1e-12);

        // real primitive mod 5: sqrt(5), real positive
        let chi5 = character_from_label("5.2").unwrap();
        let tau = gauss_sum(&chi5);
        assert!((tau.value - c(5f64.sqrt(), 0.0)).norm() < 1e-12);

        // any primitive chi mod 7: |tau| = sqrt(7)
        let g7 = build_group(7).unwrap();
        for ch in enumerate_characters(&g7).unwrap() {
            if ch.is_primitive() {
                assert!((gauss_sum(&ch).value.norm() - 7f64.sqrt()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn orthogonality() {
        for q in 2..=200u64 {
            let g = build_group(q).unwrap();
            for ch in enumerate_characters(&g).unwrap() {
                let sum: Complex64 = (1..=q).map(|a| ch.eval(a as i64)).sum();
                if ch.is_principal() {
                    assert!((sum.re - g.phi() as f64).abs() < 1e-9 && sum.im.abs() < 1e-9);
                } else {
                    assert!(sum.norm() < 1e-12, "q={q} chi={} sum={sum}", ch.label());
                }
            }
        }
    }

    #[test]
    fn twisted_exponential_identity() {
        // e(-an/q) = phi(q)^{-1} sum_chi conj(tau(chi)) chi(a) chi(n)
        for q in 2..=50u64 {
            let g = build_group(q).unwrap();
            let chars = enumerate_characters(&g).unwrap();
            let taus: Vec<Complex64> = chars.iter().map(|ch| gauss_sum(ch).value).collect();
            let phi = g.phi() as f64;
            for a in 1..q {
                if gcd(a, q) != 1 {
                    continue;
                }
                for n in 1..q {
                    if gcd(n, q) != 1 {
                        continue;
                    }
                    let theta = -2.0 * std::f64::consts::PI * ((a * n % q) as f64) / q as f64;
                    let lhs = c(theta.cos(), theta.sin());
                    let mut rhs = Complex64::new(0.0, 0.0);
                    for (ch, tau) in chars.iter().zip(&taus) {
                        rhs += tau.conj() * ch.eval(a as i64) * ch.eval(n as i64);
                    }
                    rhs /= phi;
                    assert!((lhs - rhs).norm() < 1e-10, "q={q} a={a} n={n}");
                }
            }
        }
    }

    #[test]
    fn gauss_sum_direct_vs_induced() {
        for q in 2..=60u64 {
            let g = build_group(q).unwrap();
            for ch in enumerate_characters(&g).unwrap() {
                let direct = gauss_sum(&ch).value;
                let induced = gauss_sum_induced(&ch).unwrap().value;
                let ratio = q / ch.conductor_modulus();
                let squarefree_coprime = crate::arith::mobius(ratio).unwrap() != 0
                    && gcd(ratio, ch.conductor_modulus()) == 1;
                let tol = if squarefree_coprime { 1e-10 } else { 1e-9 };
                assert!(
                    (direct - induced).norm() < tol,
                    "q={q} chi={} direct={direct} induced={induced}",
                    ch.label()
                );
            }
        }
    }

    #[test]
    fn conjugate_character() {
        let chi = character_from_label("5.1").unwrap();
        let bar = chi.conjugate();
        for n in 0..5i64 {
            assert!((bar.eval(n) - chi.eval(n).conj()).norm() < 1e-15);
        }
        assert_eq!(bar.label(), "5.3");
    }

    #[test]
    fn label_parsing() {
        assert_eq!(parse_label("5.2").unwrap(), (5, 2));
        assert!(parse_label("x").is_err());
        assert!(character_by_position(&build_group(5).unwrap(), 4).is_err());
    }
}
