//! Colored cones and fans, and divisor calculus on the embeddings they classify.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::cone::{Cone, ConeError};
use crate::exactmath::{
    dot, int_to_rat_vec, primitive_generator, rank, solve_integer, solve_rational, to_rat,
    IntMatrix, IntVec, Integer, RatVec, Rational,
};
use crate::horospace::HoroSpace;
use crate::polytope::{PolytopeError, RationalPolytope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("the fan is not complete")]
    Incomplete,
    #[error("the fan is not Q-factorial; the Picard number is not reported")]
    NotQFactorial,
    #[error("divisor is not Cartier: {0}")]
    NotCartier(NotCartier),
    #[error("divisor is not ample: the section polytope does not match its Cartier data")]
    NotAmple,
    #[error("divisor data has {found} {what} coefficients, expected {expected}")]
    DivisorShape { what: &'static str, expected: usize, found: usize },
}

/// A colored cone: colorless primitive generators plus a set of colors
/// (simple-root indices) whose images it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredCone {
    pub generators: Vec<IntVec>,
    pub colors: BTreeSet<usize>,
}

impl ColoredCone {
    pub fn new(mut generators: Vec<IntVec>, colors: BTreeSet<usize>) -> Self {
        generators.sort();
        generators.dedup();
        ColoredCone { generators, colors }
    }

    /// Generators of the underlying cone: rays then color images.
    pub fn all_generators(&self, space: &HoroSpace) -> Vec<IntVec> {
        let mut g = self.generators.clone();
        for c in space.colors() {
            if self.colors.contains(&c.alpha) {
                g.push(c.vector.clone());
            }
        }
        g
    }

    pub fn cone(&self, space: &HoroSpace) -> Result<Cone, ConeError> {
        Cone::from_int_generators(space.n(), &self.all_generators(space))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredFan {
    cones: Vec<ColoredCone>,
    rays: Vec<IntVec>,
}

impl ColoredFan {
    pub fn new(cones: Vec<ColoredCone>) -> Self {
        let rays: BTreeSet<IntVec> = cones.iter().flat_map(|c| c.generators.iter().cloned()).collect();
        ColoredFan { cones, rays: rays.into_iter().collect() }
    }

    /// Maximal colored cones.
    pub fn cones(&self) -> &[ColoredCone] {
        &self.cones
    }

    /// Colorless rays `x_1, …, x_m`, sorted.
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    /// Colors of the fan.
    pub fn colors(&self) -> BTreeSet<usize> {
        self.cones.iter().flat_map(|c| c.colors.iter().copied()).collect()
    }

    fn ray_index(&self, x: &IntVec) -> usize {
        self.rays.binary_search(x).expect("ray of the fan")
    }
}

/// Why a collection of colored cones fails to be a colored fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanDefect {
    UnknownColor { cone: usize, alpha: usize },
    ZeroColor { cone: usize, alpha: usize },
    BadGenerator { cone: usize },
    NotStrictlyConvex { cone: usize },
    BadIntersection { first: usize, second: usize },
    ColorMismatch { first: usize, second: usize },
    NotFullDimensional { cone: usize },
    UnpairedFacet { cone: usize },
}

impl fmt::Display for FanDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanDefect::UnknownColor { cone, alpha } => write!(f, "cone {cone}: {alpha} is not a color"),
            FanDefect::ZeroColor { cone, alpha } => write!(f, "cone {cone}: color {alpha} maps to 0"),
            FanDefect::BadGenerator { cone } => write!(f, "cone {cone}: generator not primitive"),
            FanDefect::NotStrictlyConvex { cone } => write!(f, "cone {cone} contains a line"),
            FanDefect::BadIntersection { first, second } => {
                write!(f, "cones {first} and {second} do not meet in a common face")
            }
            FanDefect::ColorMismatch { first, second } => {
                write!(f, "cones {first} and {second} disagree on the colors of their common face")
            }
            FanDefect::NotFullDimensional { cone } => write!(f, "cone {cone} is not full-dimensional"),
            FanDefect::UnpairedFacet { cone } => {
                write!(f, "a facet of cone {cone} is not shared by exactly one other cone")
            }
        }
    }
}

fn colors_in(space: &HoroSpace, cc: &ColoredCone, face: &Cone) -> BTreeSet<usize> {
    space
        .colors()
        .iter()
        .filter(|c| cc.colors.contains(&c.alpha) && face.contains_int(&c.vector))
        .map(|c| c.alpha)
        .collect()
}

/// Checks strict convexity, color data and face compatibility.
pub fn validate_fan(space: &HoroSpace, fan: &ColoredFan) -> Result<(), FanDefect> {
    let mut cones = Vec::with_capacity(fan.cones.len());
    for (k, cc) in fan.cones.iter().enumerate() {
        for &alpha in &cc.colors {
            match space.colors().iter().find(|c| c.alpha == alpha) {
                None => return Err(FanDefect::UnknownColor { cone: k, alpha }),
                Some(c) if c.vector.iter().all(|x| x.is_zero()) => {
                    return Err(FanDefect::ZeroColor { cone: k, alpha })
                }
                _ => {}
            }
        }
        if cc.generators.iter().any(|g| g.len() != space.n() || !crate::exactmath::is_primitive(g)) {
            return Err(FanDefect::BadGenerator { cone: k });
        }
        let cone = cc.cone(space).map_err(|_| FanDefect::BadGenerator { cone: k })?;
        if !cone.is_pointed() {
            return Err(FanDefect::NotStrictlyConvex { cone: k });
        }
        cones.push(cone);
    }
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let inter = cones[i]
                .intersection(&cones[j])
                .map_err(|_| FanDefect::BadIntersection { first: i, second: j })?;
            if !cones[i].has_face(&inter) || !cones[j].has_face(&inter) || inter == cones[i] || inter == cones[j] {
                return Err(FanDefect::BadIntersection { first: i, second: j });
            }
            if colors_in(space, &fan.cones[i], &inter) != colors_in(space, &fan.cones[j], &inter) {
                return Err(FanDefect::ColorMismatch { first: i, second: j });
            }
        }
    }
    Ok(())
}

pub fn is_valid_fan(space: &HoroSpace, fan: &ColoredFan) -> bool {
    validate_fan(space, fan).is_ok()
}

/// Completeness via facet pairing: every facet of every maximal cone is
/// shared by exactly one other cone.
pub fn check_complete(space: &HoroSpace, fan: &ColoredFan) -> Result<(), FanDefect> {
    validate_fan(space, fan)?;
    let n = space.n();
    let cones: Vec<Cone> = fan.cones.iter().map(|c| c.cone(space).expect("validated")).collect();
    for (k, c) in cones.iter().enumerate() {
        if !c.is_full_dimensional() {
            return Err(FanDefect::NotFullDimensional { cone: k });
        }
    }
    for (k, c) in cones.iter().enumerate() {
        let mut shared = vec![0usize; c.facets().len()];
        for (j, other) in cones.iter().enumerate() {
            if j == k {
                continue;
            }
            let inter = c.intersection(other).expect("validated");
            if inter.dim() + 1 != n {
                continue;
            }
            let pts: Vec<RatVec> = inter.rays().iter().map(|r| int_to_rat_vec(r)).collect();
            for (f, count) in c.facets().iter().zip(shared.iter_mut()) {
                if pts.iter().all(|p| dot(f, p).is_zero()) {
                    *count += 1;
                }
            }
        }
        if shared.iter().any(|&s| s != 1) {
            return Err(FanDefect::UnpairedFacet { cone: k });
        }
    }
    Ok(())
}

pub fn is_complete(space: &HoroSpace, fan: &ColoredFan) -> bool {
    check_complete(space, fan).is_ok()
}

/// The colored fan whose maximal cones are the cones over the facets of `q`.
pub fn face_fan_from_polytope(space: &HoroSpace, q: &RationalPolytope) -> Result<ColoredFan, FanError> {
    q.require_full()?;
    if !q.contains_origin_in_interior() {
        return Err(PolytopeError::OriginNotInterior.into());
    }
    let points = space.color_points();
    let cones = q
        .facets()
        .iter()
        .zip(q.facet_vertices())
        .map(|(facet, verts)| {
            let colors: BTreeSet<usize> = space
                .colors()
                .iter()
                .zip(&points)
                .filter(|(_, p)| facet.saturates(p))
                .map(|(c, _)| c.alpha)
                .collect();
            let generators = verts
                .iter()
                .map(|&i| &q.vertices()[i])
                .filter(|v| !points.contains(v))
                .map(|v| primitive_generator(v).expect("nonzero vertex"))
                .collect();
            ColoredCone::new(generators, colors)
        })
        .collect();
    Ok(ColoredFan::new(cones))
}

/// Coefficients of a B-stable divisor `Σ b_i X_i + Σ b_α D_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorData {
    /// One per colorless ray, aligned with `ColoredFan::rays`.
    pub b_rays: Vec<Integer>,
    /// One per color of the space, aligned with `HoroSpace::colors`.
    pub b_colors: Vec<Integer>,
}

impl DivisorData {
    pub fn zero(space: &HoroSpace, fan: &ColoredFan) -> Self {
        DivisorData {
            b_rays: vec![Integer::zero(); fan.rays().len()],
            b_colors: vec![Integer::zero(); space.num_colors()],
        }
    }

    pub fn scaled(&self, k: &Integer) -> Self {
        DivisorData {
            b_rays: self.b_rays.iter().map(|b| b * k).collect(),
            b_colors: self.b_colors.iter().map(|b| b * k).collect(),
        }
    }

    fn check_shape(&self, space: &HoroSpace, fan: &ColoredFan) -> Result<(), FanError> {
        if self.b_rays.len() != fan.rays().len() {
            return Err(FanError::DivisorShape { what: "ray", expected: fan.rays().len(), found: self.b_rays.len() });
        }
        if self.b_colors.len() != space.num_colors() {
            return Err(FanError::DivisorShape {
                what: "color",
                expected: space.num_colors(),
                found: self.b_colors.len(),
            });
        }
        Ok(())
    }

    fn color_coefficient(&self, space: &HoroSpace, alpha: usize) -> &Integer {
        let k = space.colors().iter().position(|c| c.alpha == alpha).expect("color of the space");
        &self.b_colors[k]
    }
}

/// `−K = Σ X_i + Σ a_α D_α`.
pub fn anticanonical_divisor(space: &HoroSpace, fan: &ColoredFan) -> DivisorData {
    DivisorData {
        b_rays: vec![Integer::one(); fan.rays().len()],
        b_colors: space.colors().iter().map(|c| Integer::from(c.a)).collect(),
    }
}

/// Characters `χ_𝒞 ∈ M`, one per maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierCertificate {
    pub chi: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotCartier {
    /// The linear system of a cone has no rational solution.
    Inconsistent { cone: usize },
    /// The system of a cone is only solvable with a non-integral character.
    NonIntegral { cone: usize, chi: RatVec },
}

impl fmt::Display for NotCartier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotCartier::Inconsistent { cone } => write!(f, "cone {cone}: inconsistent system"),
            NotCartier::NonIntegral { cone, chi } => {
                write!(f, "cone {cone}: character {} is not integral", crate::exactmath::format_vec(chi))
            }
        }
    }
}

/// The linear conditions `⟨χ, g⟩ = b_g` for one cone.
fn cone_system(space: &HoroSpace, fan: &ColoredFan, d: &DivisorData, k: usize) -> (Vec<IntVec>, IntVec) {
    let cc = &fan.cones[k];
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for g in &cc.generators {
        rows.push(g.clone());
        rhs.push(d.b_rays[fan.ray_index(g)].clone());
    }
    for c in space.colors() {
        if cc.colors.contains(&c.alpha) {
            rows.push(c.vector.clone());
            rhs.push(d.color_coefficient(space, c.alpha).clone());
        }
    }
    (rows, rhs)
}

/// Rational characters `χ_𝒞` (unique on full-dimensional cones); `None` if
/// some cone's system is inconsistent.
pub fn rational_characters(space: &HoroSpace, fan: &ColoredFan, d: &DivisorData) -> Result<Vec<RatVec>, NotCartier> {
    (0..fan.cones.len())
        .map(|k| {
            let (rows, rhs) = cone_system(space, fan, d, k);
            let rows: Vec<RatVec> = rows.iter().map(|r| int_to_rat_vec(r)).collect();
            let rhs: RatVec = rhs.iter().map(to_rat).collect();
            solve_rational(&rows, &rhs, space.n()).ok_or(NotCartier::Inconsistent { cone: k })
        })
        .collect()
}

pub fn cartier_data(
    space: &HoroSpace,
    fan: &ColoredFan,
    d: &DivisorData,
) -> Result<Result<CartierCertificate, NotCartier>, FanError> {
    d.check_shape(space, fan)?;
    let mut chi = Vec::with_capacity(fan.cones.len());
    for k in 0..fan.cones.len() {
        let (rows, rhs) = cone_system(space, fan, d, k);
        let r: Vec<RatVec> = rows.iter().map(|x| int_to_rat_vec(x)).collect();
        let b: RatVec = rhs.iter().map(to_rat).collect();
        let Some(x) = solve_rational(&r, &b, space.n()) else {
            return Ok(Err(NotCartier::Inconsistent { cone: k }));
        };
        if rows.is_empty() {
            chi.push(vec![Integer::zero(); space.n()]);
            continue;
        }
        match solve_integer(&IntMatrix::from_rows(&rows), &rhs) {
            Some(v) => chi.push(v),
            None => return Ok(Err(NotCartier::NonIntegral { cone: k, chi: x })),
        }
    }
    Ok(Ok(CartierCertificate { chi }))
}

/// Strict convexity of the support function plus the color condition.
pub fn is_ample(
    space: &HoroSpace,
    fan: &ColoredFan,
    d: &DivisorData,
    cert: &CartierCertificate,
) -> Result<bool, FanError> {
    d.check_shape(space, fan)?;
    if !is_complete(space, fan) {
        return Err(FanError::Incomplete);
    }
    let chi: Vec<RatVec> = cert.chi.iter().map(|c| int_to_rat_vec(c)).collect();
    Ok(ample_with_characters(space, fan, d, &chi))
}

fn ample_with_characters(space: &HoroSpace, fan: &ColoredFan, d: &DivisorData, chi: &[RatVec]) -> bool {
    let cones: Vec<Cone> = fan.cones.iter().map(|c| c.cone(space).expect("valid fan")).collect();
    for (k, cc) in fan.cones.iter().enumerate() {
        for g in cc.all_generators(space) {
            let gr = int_to_rat_vec(&g);
            let own = dot(&chi[k], &gr);
            for (j, other) in cones.iter().enumerate() {
                if j == k {
                    continue;
                }
                let theirs = dot(&chi[j], &gr);
                if theirs > own || (theirs == own && !other.contains(&gr)) {
                    return false;
                }
            }
        }
        for (c, b) in space.colors().iter().zip(&d.b_colors) {
            if !cc.colors.contains(&c.alpha) && dot(&chi[k], &int_to_rat_vec(&c.vector)) >= to_rat(b) {
                return false;
            }
        }
    }
    true
}

/// Whether the fan is ℚ-factorial: every cone is generated by linearly
/// independent rays and color images.
pub fn is_q_factorial_fan(space: &HoroSpace, fan: &ColoredFan) -> bool {
    fan.cones.iter().all(|cc| {
        let gens: Vec<RatVec> = cc.all_generators(space).iter().map(|g| int_to_rat_vec(g)).collect();
        rank(&gens) == gens.len()
    })
}

/// `ρ = m + #(S\I) − n`, reported only for ℚ-factorial complete fans.
pub fn picard_number(space: &HoroSpace, fan: &ColoredFan) -> Result<i64, FanError> {
    if !is_complete(space, fan) {
        return Err(FanError::Incomplete);
    }
    if !is_q_factorial_fan(space, fan) {
        return Err(FanError::NotQFactorial);
    }
    Ok(fan.rays().len() as i64 + space.num_colors() as i64 - space.n() as i64)
}

/// `P_D = {χ : ⟨χ, x_i⟩ ≥ −b_i, ⟨χ, α̌_M⟩ ≥ −b_α}`, checked against `conv{−χ_𝒞}`.
pub fn section_polytope(space: &HoroSpace, fan: &ColoredFan, d: &DivisorData) -> Result<RationalPolytope, FanError> {
    let cert = match cartier_data(space, fan, d)? {
        Ok(c) => c,
        Err(e) => return Err(FanError::NotCartier(e)),
    };
    let mut halfspaces: Vec<(RatVec, Rational)> = Vec::new();
    for (x, b) in fan.rays().iter().zip(&d.b_rays) {
        halfspaces.push((x.iter().map(|v| -to_rat(v)).collect(), to_rat(b)));
    }
    for (c, b) in space.colors().iter().zip(&d.b_colors) {
        halfspaces.push((c.vector.iter().map(|v| -to_rat(v)).collect(), to_rat(b)));
    }
    let by_inequalities =
        RationalPolytope::from_inequalities(space.n(), &halfspaces).map_err(|_| FanError::NotAmple)?;
    let corners: Vec<RatVec> = cert.chi.iter().map(|c| c.iter().map(|x| -to_rat(x)).collect()).collect();
    let by_characters = RationalPolytope::hull(&corners)?;
    if by_inequalities != by_characters {
        return Err(FanError::NotAmple);
    }
    Ok(by_inequalities)
}

/// `{u : ⟨χ_𝒞, u⟩ ≤ 1}` for the characters of `−K`; recovers `Q` from its face fan.
pub fn anticanonical_polytope(space: &HoroSpace, fan: &ColoredFan) -> Result<RationalPolytope, FanError> {
    let d = anticanonical_divisor(space, fan);
    let chi = rational_characters(space, fan, &d).map_err(FanError::NotCartier)?;
    let halfspaces: Vec<(RatVec, Rational)> = chi.into_iter().map(|c| (c, Rational::one())).collect();
    Ok(RationalPolytope::from_inequalities(space.n(), &halfspaces)?)
}
