//! Legal oriented third Reidemeister moves.
//!
//! An R3 site consists of three strands meeting in three crossings. The top
//! strand `T` passes over both others, the middle strand `M` passes over the
//! bottom strand `B`. The crossings are `x = T∩M`, `y = T∩B`, `z = M∩B`.
//! A site is described by which crossing each strand meets first and by the
//! three crossing signs.

/// Order and sign data of an R3 triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Descriptor {
    /// Bit 0: `T` meets `x` before `y`. Bit 1: `M` meets `x` before `z`.
    /// Bit 2: `B` meets `y` before `z`.
    pub order: u8,
    /// Bits 0, 1, 2: crossing `x`, `y`, `z` is positive.
    pub signs: u8,
}

impl Descriptor {
    /// The descriptor after the move: every strand meets its two crossings in
    /// the opposite order.
    pub fn flipped(self) -> Self {
        Descriptor { order: self.order ^ 0b111, signs: self.signs }
    }
}

/// All sixteen descriptors realized by planar oriented triangles.
pub const LEGAL: [Descriptor; 16] = [
    Descriptor { order: 0, signs: 0 },
    Descriptor { order: 0, signs: 7 },
    Descriptor { order: 1, signs: 3 },
    Descriptor { order: 1, signs: 4 },
    Descriptor { order: 2, signs: 2 },
    Descriptor { order: 2, signs: 5 },
    Descriptor { order: 3, signs: 1 },
    Descriptor { order: 3, signs: 6 },
    Descriptor { order: 4, signs: 1 },
    Descriptor { order: 4, signs: 6 },
    Descriptor { order: 5, signs: 2 },
    Descriptor { order: 5, signs: 5 },
    Descriptor { order: 6, signs: 3 },
    Descriptor { order: 6, signs: 4 },
    Descriptor { order: 7, signs: 0 },
    Descriptor { order: 7, signs: 7 },
];

pub fn is_legal(d: Descriptor) -> bool {
    LEGAL.binary_search(&d).is_ok()
}

/// Recomputes the table from straight-line triangles: `x` at the origin, `y`
/// at `(1, 0)`, `z` at `(0, ±1)`, every strand oriented either way. A crossing
/// is positive when the over direction turns counterclockwise onto the under
/// direction.
pub fn generate() -> Vec<Descriptor> {
    let cross = |a: (i64, i64), b: (i64, i64)| a.0 * b.1 - a.1 * b.0;
    let dot = |a: (i64, i64), b: (i64, i64)| a.0 * b.0 + a.1 * b.1;
    let mut out = Vec::new();
    for s in [1i64, -1] {
        let yz = (-1, s);
        for mask in 0..8u8 {
            let e = |bit: u8| if mask >> bit & 1 == 1 { -1 } else { 1 };
            let dt = (e(0), 0);
            let dm = (0, e(1) * s);
            let db = (e(2) * yz.0, e(2) * yz.1);
            let order = (dot(dt, (1, 0)) > 0) as u8
                | ((dot(dm, (0, s)) > 0) as u8) << 1
                | ((dot(db, yz) > 0) as u8) << 2;
            let signs = (cross(dt, dm) > 0) as u8
                | ((cross(dt, db) > 0) as u8) << 1
                | ((cross(dm, db) > 0) as u8) << 2;
            out.push(Descriptor { order, signs });
        }
    }
    out.sort();
    out.dedup();
    out
}
