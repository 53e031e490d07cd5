//! Basis blades of R(4,1) and the precomputed product tables.
//!
//! Blades are identified two ways: by a 5-bit mask (bit `i` set means the
//! blade contains `e{i+1}`) and by their canonical index. Canonical order is
//! grade-major, lexicographic by ascending basis-vector indices within a
//! grade:
//!
//! ```text
//!  0        1
//!  1..=5    e1 e2 e3 e4 e5
//!  6..=15   e12 e13 e14 e15 e23 e24 e25 e34 e35 e45
//! 16..=25   e123 e124 e125 e134 e135 e145 e234 e235 e245 e345
//! 26..=30   e1234 e1235 e1245 e1345 e2345
//! 31        e12345
//! ```
//!
//! The metric is e1² = e2² = e3² = e4² = +1, e5² = -1.

use std::fmt::Write as _;

/// Number of basis blades in the algebra.
pub const BLADE_COUNT: usize = 32;

/// Squares of the five basis vectors.
pub const METRIC: [i8; 5] = [1, 1, 1, 1, -1];

/// Blade mask for each canonical index.
pub const INDEX_TO_MASK: [u8; BLADE_COUNT] = build_index_to_mask();

/// Canonical index for each blade mask.
pub const MASK_TO_INDEX: [u8; BLADE_COUNT] = build_mask_to_index();

/// Grade of each canonical index.
pub const GRADE: [u8; BLADE_COUNT] = build_grades();

/// Canonical indices of the even-grade blades (grades 0, 2, 4), in order.
pub const EVEN: [usize; 16] = build_parity(0);

/// Canonical indices of the odd-grade blades (grades 1, 3, 5), in order.
pub const ODD: [usize; 16] = build_parity(1);

/// All canonical indices.
pub const ALL: [usize; BLADE_COUNT] = build_all();

/// Geometric product table: `e_i e_j = GP_SIGN[i][j] * e_{GP_INDEX[i][j]}`.
pub const GP_SIGN: [[i8; BLADE_COUNT]; BLADE_COUNT] = build_gp_sign();
pub const GP_INDEX: [[u8; BLADE_COUNT]; BLADE_COUNT] = build_gp_index();

/// Outer product signs; zero where the blades share a basis vector.
pub const OUTER_SIGN: [[i8; BLADE_COUNT]; BLADE_COUNT] = build_outer_sign();

/// Inner product signs (the grade |r-s| part of the geometric product);
/// zero unless one blade's vectors are a subset of the other's.
pub const INNER_SIGN: [[i8; BLADE_COUNT]; BLADE_COUNT] = build_inner_sign();

const fn popcount(mut m: u8) -> u8 {
    let mut c = 0;
    while m != 0 {
        c += m & 1;
        m >>= 1;
    }
    c
}

const fn reverse5(m: u8) -> u8 {
    let mut out = 0u8;
    let mut i = 0;
    while i < 5 {
        if m & (1 << i) != 0 {
            out |= 1 << (4 - i);
        }
        i += 1;
    }
    out
}

const fn build_index_to_mask() -> [u8; BLADE_COUNT] {
    // Lexicographic order of ascending index tuples is the descending order
    // of the bit-reversed mask.
    let mut out = [0u8; BLADE_COUNT];
    let mut n = 0;
    let mut grade = 0;
    while grade <= 5 {
        let mut key: i32 = 31;
        while key >= 0 {
            let mask = reverse5(key as u8);
            if popcount(mask) == grade {
                out[n] = mask;
                n += 1;
            }
            key -= 1;
        }
        grade += 1;
    }
    out
}

const fn build_mask_to_index() -> [u8; BLADE_COUNT] {
    let masks = build_index_to_mask();
    let mut out = [0u8; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        out[masks[i] as usize] = i as u8;
        i += 1;
    }
    out
}

const fn build_grades() -> [u8; BLADE_COUNT] {
    let masks = build_index_to_mask();
    let mut out = [0u8; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        out[i] = popcount(masks[i]);
        i += 1;
    }
    out
}

const fn build_parity(parity: u8) -> [usize; 16] {
    let grades = build_grades();
    let mut out = [0usize; 16];
    let mut n = 0;
    let mut i = 0;
    while i < BLADE_COUNT {
        if grades[i] % 2 == parity {
            out[n] = i;
            n += 1;
        }
        i += 1;
    }
    out
}

const fn build_all() -> [usize; BLADE_COUNT] {
    let mut out = [0usize; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        out[i] = i;
        i += 1;
    }
    out
}

/// Sign and result mask of the product of two basis blades given as masks.
pub const fn blade_product(a: u8, b: u8) -> (i8, u8) {
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += popcount(shifted & b) as u32;
        shifted >>= 1;
    }
    let mut sign: i8 = if swaps.is_multiple_of(2) { 1 } else { -1 };
    let common = a & b;
    let mut i = 0;
    while i < 5 {
        if common & (1 << i) != 0 {
            sign *= METRIC[i];
        }
        i += 1;
    }
    (sign, a ^ b)
}

const fn build_gp_sign() -> [[i8; BLADE_COUNT]; BLADE_COUNT] {
    let masks = build_index_to_mask();
    let mut out = [[0i8; BLADE_COUNT]; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        let mut j = 0;
        while j < BLADE_COUNT {
            out[i][j] = blade_product(masks[i], masks[j]).0;
            j += 1;
        }
        i += 1;
    }
    out
}

const fn build_gp_index() -> [[u8; BLADE_COUNT]; BLADE_COUNT] {
    let masks = build_index_to_mask();
    let to_index = build_mask_to_index();
    let mut out = [[0u8; BLADE_COUNT]; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        let mut j = 0;
        while j < BLADE_COUNT {
            out[i][j] = to_index[blade_product(masks[i], masks[j]).1 as usize];
            j += 1;
        }
        i += 1;
    }
    out
}

const fn build_outer_sign() -> [[i8; BLADE_COUNT]; BLADE_COUNT] {
    let masks = build_index_to_mask();
    let gp = build_gp_sign();
    let mut out = [[0i8; BLADE_COUNT]; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        let mut j = 0;
        while j < BLADE_COUNT {
            if masks[i] & masks[j] == 0 {
                out[i][j] = gp[i][j];
            }
            j += 1;
        }
        i += 1;
    }
    out
}

const fn build_inner_sign() -> [[i8; BLADE_COUNT]; BLADE_COUNT] {
    let masks = build_index_to_mask();
    let gp = build_gp_sign();
    let mut out = [[0i8; BLADE_COUNT]; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        let mut j = 0;
        while j < BLADE_COUNT {
            let (a, b) = (masks[i], masks[j]);
            if a & b == a || a & b == b {
                out[i][j] = gp[i][j];
            }
            j += 1;
        }
        i += 1;
    }
    out
}

/// Human-readable name of a canonical blade index, e.g. `"e135"`.
pub fn blade_name(index: usize) -> String {
    let mask = INDEX_TO_MASK[index];
    if mask == 0 {
        return "1".to_string();
    }
    let mut s = String::from("e");
    for i in 0..5 {
        if mask & (1 << i) != 0 {
            s.push(char::from(b'1' + i as u8));
        }
    }
    s
}

/// Canonical index of a blade name such as `"e24"` or `"1"`. Basis vectors
/// must be listed in ascending order.
pub fn blade_index(name: &str) -> Option<usize> {
    if name == "1" {
        return Some(0);
    }
    let digits = name.strip_prefix('e')?;
    if digits.is_empty() {
        return None;
    }
    let mut mask = 0u8;
    let mut last = 0u8;
    for c in digits.bytes() {
        if !(b'1'..=b'5').contains(&c) || c <= last {
            return None;
        }
        mask |= 1 << (c - b'1');
        last = c;
    }
    Some(MASK_TO_INDEX[mask as usize] as usize)
}

/// Text dump of the full geometric product table, one row per left blade.
pub fn cayley_dump() -> String {
    let names: Vec<String> = (0..BLADE_COUNT).map(blade_name).collect();
    let width = 8;
    let mut out = String::new();
    let _ = write!(out, "{:>width$}", "");
    for n in &names {
        let _ = write!(out, "{n:>width$}");
    }
    out.push('\n');
    for i in 0..BLADE_COUNT {
        let _ = write!(out, "{:>width$}", names[i]);
        for j in 0..BLADE_COUNT {
            let sign = if GP_SIGN[i][j] < 0 { "-" } else { "" };
            let cell = format!("{sign}{}", names[GP_INDEX[i][j] as usize]);
            let _ = write!(out, "{cell:>width$}");
        }
        out.push('\n');
    }
    out
}
