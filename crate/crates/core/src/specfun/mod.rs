//! Special functions: orthogonal polynomials, spherical harmonics, Gauss
//! rules and sphere geometry.

mod geometry;
mod harmonics;
mod hermite;
mod legendre;
mod quadrature;

pub use geometry::{
    cos_angle, geodesic_distance, sph_harm_dim, surface_area, Distance, SphereTimePoint,
};
pub use harmonics::sph_harm_real;
pub use hermite::{hermite_all, hermite_h, hermite_h_scaled, HermiteScaling};
pub use legendre::{
    assoc_legendre, gegenbauer_c, legendre_p, norm_assoc_legendre, ScaledLegendreTable,
    DOMAIN_SLACK,
};
pub(crate) use legendre::{gegenbauer_all, gegenbauer_unchecked};
pub use quadrature::{
    default_hermite_nodes, default_legendre_nodes, quadrature, QuadratureKind, QuadratureRule,
};
