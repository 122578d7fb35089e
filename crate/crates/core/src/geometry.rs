//! Minimal 3D vector and ray helpers for the transport geometry.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Cartesian vector [m].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        self * (1.0 / self.norm())
    }

    /// True if |v| = 1 within `tol`.
    pub fn is_unit(self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self * -1.0
    }
}

/// Half-line with unit direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub origin: Vec3,
    pub direction: Vec3,
}

impl Ray {
    pub fn new(origin: Vec3, direction: Vec3) -> Self {
        Ray { origin, direction }
    }

    pub fn at(&self, t: f64) -> Vec3 {
        self.origin + self.direction * t
    }
}

/// Forward parameter at which a ray starting at `origin` leaves the sphere
/// |r| = `radius` (centre at the coordinate origin). Returns `None` when the
/// ray never reaches the sphere in the forward direction.
pub fn sphere_exit_distance(origin: Vec3, direction: Vec3, radius: f64) -> Option<f64> {
    // |o + t d|^2 = R^2 with |d| = 1: t^2 + 2 mu t + (|o|^2 - R^2) = 0.
    let mu = origin.dot(direction);
    let c = origin.norm_sqr() - radius * radius;
    let disc = mu * mu - c;
    if disc < 0.0 {
        return None;
    }
    let root = disc.sqrt();
    let t_exit = -mu + root;
    if t_exit >= 0.0 {
        Some(t_exit)
    } else {
        None
    }
}

/// Forward parameter at which a ray first enters the sphere |r| = `radius`,
/// or `Some(0.0)` if it already starts inside.
pub fn sphere_entry_distance(origin: Vec3, direction: Vec3, radius: f64) -> Option<f64> {
    if origin.norm_sqr() <= radius * radius {
        return Some(0.0);
    }
    let mu = origin.dot(direction);
    let c = origin.norm_sqr() - radius * radius;
    let disc = mu * mu - c;
    if disc < 0.0 {
        return None;
    }
    let t_entry = -mu - disc.sqrt();
    if t_entry >= 0.0 {
        Some(t_entry)
    } else {
        None
    }
}
