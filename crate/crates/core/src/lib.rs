//! Complementary-space analysis of closed triangulated surfaces.
//!
//! The crate models the space *around* a shape: pockets, tunnels and voids
//! are detected and measured with two methods — a Voronoi/Delaunay flow
//! complex over a point sample of the surface, and a voxel level-set
//! out-and-back (morphological closing) pass. On top of those sit thin-wall
//! detection on the interior medial axis, contact-region analysis between
//! parts, and assembly-order prediction.
//!
//! Module map:
//! - [`geom`], [`predicates`]: vector math and exact geometric predicates.
//! - [`mesh`], [`mesh_io`], [`surfdist`]: triangle meshes, OFF/OBJ I/O and
//!   signed distance queries.
//! - [`sample`], [`pdb`]: point samples and molecular (PDB) input.
//! - [`delaunay`], [`voronoi`]: the 3D Delaunay triangulation and its dual.
//! - [`flow`]: critical points of the sample distance function and their
//!   stable/unstable manifolds.
//! - [`compspace`]: segmentation of complementary space into features.
//! - [`quantify`]: volume, mouth area, minimum diameter and time series.
//! - [`grid`], [`fmm`], [`isosurface`], [`closing`]: the level-set method.
//! - [`medial`], [`thinregion`]: interior medial axis and thin-wall regions.
//! - [`contact`]: contact regions and assembly spanning trees.
//! - [`shapes`]: procedural test geometry (spheres, tori, drilled blocks).

pub mod closing;
pub mod compspace;
pub mod contact;
pub mod delaunay;
pub mod flow;
pub mod fmm;
pub mod geom;
pub mod grid;
pub mod isosurface;
pub mod medial;
pub mod mesh;
pub mod mesh_io;
pub mod pdb;
pub mod predicates;
pub mod quantify;
pub mod sample;
pub mod shapes;
pub mod surfdist;
pub mod thinregion;
pub mod voronoi;

pub use geom::{vec3, Aabb, BoundingDomain, Vec3};
pub use mesh::{FaceLabel, MeshStats, TriangleMesh};
