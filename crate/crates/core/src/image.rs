//! Digital images as closure models over grid adjacency.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::ClosureModel;
use crate::pointset::{PointId, PointSet};
use crate::space::SpaceGraph;

pub type Rgb = [u8; 3];

/// Row-major RGB raster, 8 bits per channel.
#[derive(Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: usize,
    height: usize,
    pixels: Vec<Rgb>,
}

impl fmt::Debug for RasterImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RasterImage({}x{})", self.width, self.height)
    }
}

impl RasterImage {
    pub fn new(width: usize, height: usize, pixels: Vec<Rgb>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Image(format!("zero-sized image {width}x{height}")));
        }
        if pixels.len() != width * height {
            return Err(Error::Image(format!(
                "{} pixels given for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(RasterImage { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, color: Rgb) -> Result<Self> {
        Self::new(width, height, vec![color; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, c: Rgb) {
        self.pixels[y * self.width + x] = c;
    }

    /// Point id of pixel `(x, y)`.
    pub fn point(&self, x: usize, y: usize) -> PointId {
        PointId::from(y * self.width + x)
    }
}

// ---------------------------------------------------------------------------
// PPM

/// Encodes as binary PPM: `P6\n<w> <h>\n255\n` followed by `3wh` bytes.
pub fn write_ppm(img: &RasterImage) -> Vec<u8> {
    let header = format!("P6\n{} {}\n255\n", img.width, img.height);
    let mut out = Vec::with_capacity(header.len() + 3 * img.len());
    out.extend_from_slice(header.as_bytes());
    for px in &img.pixels {
        out.extend_from_slice(px);
    }
    out
}

/// Decodes binary PPM (P6) with a maximum value of 255. Header comments are
/// accepted.
pub fn read_ppm(bytes: &[u8]) -> Result<RasterImage> {
    let bad = |m: &str| Error::Image(format!("PPM: {m}"));
    let mut pos = 0;
    let mut fields = Vec::with_capacity(4);
    while fields.len() < 4 {
        while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b'#') {
            if bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                pos += 1;
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("non-ASCII header"))?);
    }
    if fields[0] != "P6" {
        return Err(bad("not a binary PPM (P6) file"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad(&format!("bad header number `{s}`")));
    let (width, height, maxval) = (num(fields[1])?, num(fields[2])?, num(fields[3])?);
    if maxval != 255 {
        return Err(bad(&format!("unsupported maximum value {maxval}")));
    }
    // exactly one whitespace byte separates the header from the raster
    pos += 1;
    let need = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(3))
        .ok_or_else(|| bad("dimensions overflow"))?;
    let data = bytes.get(pos..pos + need).ok_or_else(|| bad("truncated raster"))?;
    let pixels = data.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
    RasterImage::new(width, height, pixels)
}

// ---------------------------------------------------------------------------
// colour predicates

/// Axis-aligned RGB box with inclusive channel ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorPredicate {
    pub r: (u8, u8),
    pub g: (u8, u8),
    pub b: (u8, u8),
}

impl ColorPredicate {
    pub fn new(r: (u8, u8), g: (u8, u8), b: (u8, u8)) -> Result<Self> {
        for (lo, hi) in [r, g, b] {
            if lo > hi {
                return Err(Error::Image(format!("empty colour range {lo}..{hi}")));
            }
        }
        Ok(ColorPredicate { r, g, b })
    }

    pub fn exact(c: Rgb) -> Self {
        ColorPredicate {
            r: (c[0], c[0]),
            g: (c[1], c[1]),
            b: (c[2], c[2]),
        }
    }

    #[inline]
    pub fn matches(&self, c: Rgb) -> bool {
        let within = |v: u8, (lo, hi): (u8, u8)| lo <= v && v <= hi;
        within(c[0], self.r) && within(c[1], self.g) && within(c[2], self.b)
    }
}

impl fmt::Display for ColorPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "color({}..{},{}..{},{}..{})",
            self.r.0, self.r.1, self.g.0, self.g.1, self.b.0, self.b.1
        )
    }
}

/// Parses the canonical atom spelling `color(rlo..rhi,glo..ghi,blo..bhi)`.
impl FromStr for ColorPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Image(format!("not a colour predicate: `{s}`"));
        let body = s
            .strip_prefix("color(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut ranges = [(0u8, 0u8); 3];
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        for (slot, part) in ranges.iter_mut().zip(parts) {
            let (lo, hi) = part.split_once("..").ok_or_else(bad)?;
            *slot = (
                lo.trim().parse().map_err(|_| bad())?,
                hi.trim().parse().map_err(|_| bad())?,
            );
        }
        ColorPredicate::new(ranges[0], ranges[1], ranges[2])
    }
}

/// Parses `#RRGGBB`.
pub fn parse_hex_color(s: &str) -> Option<Rgb> {
    let hex = s.strip_prefix('#')?;
    if hex.len() != 6 || !hex.is_ascii() {
        return None;
    }
    let ch = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).ok();
    Some([ch(0)?, ch(2)?, ch(4)?])
}

// ---------------------------------------------------------------------------
// grid models

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Adjacency {
    /// Von Neumann neighbourhood.
    #[default]
    Four,
    /// Moore neighbourhood.
    Eight,
}

impl FromStr for Adjacency {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "4" => Ok(Adjacency::Four),
            "8" => Ok(Adjacency::Eight),
            other => Err(format!("adjacency must be 4 or 8, got `{other}`")),
        }
    }
}

const FOUR: [(isize, isize); 4] = [(0, -1), (-1, 0), (1, 0), (0, 1)];
const EIGHT: [(isize, isize); 8] = [(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)];

fn row_edges(width: usize, height: usize, y: usize, offsets: &[(isize, isize)]) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(width * offsets.len());
    for x in 0..width {
        let from = (y * width + x) as u32;
        for &(dx, dy) in offsets {
            let (nx, ny) = (x as isize + dx, y as isize + dy);
            if nx >= 0 && ny >= 0 && (nx as usize) < width && (ny as usize) < height {
                out.push((from, (ny as usize * width + nx as usize) as u32));
            }
        }
    }
    out
}

/// Symmetric grid relation over `width × height` pixels, id `y·width + x`.
pub fn grid_space(width: usize, height: usize, adjacency: Adjacency) -> SpaceGraph {
    let offsets: &[(isize, isize)] = match adjacency {
        Adjacency::Four => &FOUR,
        Adjacency::Eight => &EIGHT,
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<(u32, u32)>> = {
        use rayon::prelude::*;
        (0..height)
            .into_par_iter()
            .map(|y| row_edges(width, height, y, offsets))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<(u32, u32)>> = (0..height).map(|y| row_edges(width, height, y, offsets)).collect();
    SpaceGraph::from_checked_edges(width * height, rows.concat())
}

/// Pixels matching `pred`.
pub fn color_set(img: &RasterImage, pred: &ColorPredicate) -> PointSet {
    let mut set = PointSet::empty(img.len());
    for (i, &px) in img.pixels.iter().enumerate() {
        if pred.matches(px) {
            set.insert(PointId::from(i));
        }
    }
    set
}

/// One point per pixel, grid adjacency, and one letter per colour predicate.
pub fn image_to_model(
    img: &RasterImage,
    adjacency: Adjacency,
    predicates: &BTreeMap<String, ColorPredicate>,
) -> Result<ClosureModel> {
    let space = grid_space(img.width, img.height, adjacency);
    let entries: Vec<(&String, &ColorPredicate)> = predicates.iter().collect();
    #[cfg(feature = "parallel")]
    let sets: Vec<PointSet> = {
        use rayon::prelude::*;
        entries.par_iter().map(|(_, p)| color_set(img, p)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let sets: Vec<PointSet> = entries.iter().map(|(_, p)| color_set(img, p)).collect();
    let valuation = entries.into_iter().map(|(k, _)| k.clone()).zip(sets).collect();
    ClosureModel::new(space, valuation)
}

/// Copy of `img` with exactly the pixels of `s` set to `color`.
pub fn paint(img: &RasterImage, s: &PointSet, color: Rgb) -> Result<RasterImage> {
    s.check_universe(img.len())?;
    let mut out = img.clone();
    for p in s {
        out.pixels[p.index()] = color;
    }
    Ok(out)
}

pub mod maze {
    //! Deterministic maze pictures for exercising the image workflow.

    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::{RasterImage, Rgb};

    pub const WALL: Rgb = [0, 0, 0];
    pub const FLOOR: Rgb = [255, 255, 255];
    pub const EXIT: Rgb = [0, 200, 0];
    pub const START: Rgb = [0, 0, 255];

    /// Script painting reachable starts red, corridors connected to both
    /// the exit and a start orange, and exit-connected corridors without a
    /// start yellow.
    pub const SCRIPT: &str = r##"# maze regions
let wall  = color(0..60, 0..60, 0..60);
let exit  = color(0..60, 150..255, 0..60);
let start = color(0..60, 0..60, 150..255);
let open  = !wall;
let floor = open & !exit & !start;
let toexit  = open R exit;
let tostart = open R start;

paint "#FF0000" start & toexit;
paint "#FFA500" floor & toexit & tostart;
paint "#FFFF00" floor & toexit & !tostart;
"##;

    /// Carves a perfect maze on the odd lattice of a `width × height` image,
    /// walls off a fraction of passages to split it into regions, then
    /// places one exit cell and a handful of start cells.
    pub fn generate(width: usize, height: usize, seed: u64) -> RasterImage {
        assert!(width >= 3 && height >= 3, "maze needs at least 3x3 pixels");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut img = RasterImage::filled(width, height, WALL).expect("nonempty");
        let (cw, ch) = ((width - 1) / 2, (height - 1) / 2);
        let cell = |cx: usize, cy: usize| (2 * cx + 1, 2 * cy + 1);

        let mut visited = vec![false; cw * ch];
        let mut stack = vec![(0usize, 0usize)];
        visited[0] = true;
        let (x0, y0) = cell(0, 0);
        img.set(x0, y0, FLOOR);
        let mut passages = Vec::new();
        while let Some(&(cx, cy)) = stack.last() {
            let mut next = Vec::with_capacity(4);
            if cx > 0 && !visited[cy * cw + cx - 1] {
                next.push((cx - 1, cy));
            }
            if cx + 1 < cw && !visited[cy * cw + cx + 1] {
                next.push((cx + 1, cy));
            }
            if cy > 0 && !visited[(cy - 1) * cw + cx] {
                next.push((cx, cy - 1));
            }
            if cy + 1 < ch && !visited[(cy + 1) * cw + cx] {
                next.push((cx, cy + 1));
            }
            let Some(&(nx, ny)) = next.choose(&mut rng) else {
                stack.pop();
                continue;
            };
            visited[ny * cw + nx] = true;
            let (px, py) = cell(nx, ny);
            let wall = (cx + nx + 1, cy + ny + 1);
            img.set(px, py, FLOOR);
            img.set(wall.0, wall.1, FLOOR);
            passages.push(wall);
            stack.push((nx, ny));
        }

        for &(wx, wy) in &passages {
            if rng.gen_bool(0.02) {
                img.set(wx, wy, WALL);
            }
        }

        let cells = cw * ch;
        let (ex, ey) = cell(cw - 1, ch - 1);
        img.set(ex, ey, EXIT);
        let starts = 3 + cells / 100;
        for _ in 0..starts {
            let (sx, sy) = cell(rng.gen_range(0..cw), rng.gen_range(0..ch));
            if img.get(sx, sy) == FLOOR {
                img.set(sx, sy, START);
            }
        }
        img
    }
}
