//! Deterministic SVG diagrams of the family sample space.
//!
//! All geometry lives on an integer pixel grid: the four family types are
//! 100x100 boxes, name stripes are `round(100 p)` pixels thick, and the
//! emitter writes elements in a fixed order, so a given invocation always
//! produces identical bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use twochild::Rational;

pub const BOX: i64 = 100;
const GAP: i64 = 20;
const MARGIN: i64 = 20;
const LABEL_BAND: i64 = 40;
const WIDTH: i64 = MARGIN * 2 + BOX * 4 + GAP * 3;
const HEIGHT: i64 = MARGIN + BOX + LABEL_BAND;

/// Stripe colors by name index; the distinguished name is the blue first.
pub const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e"];

const BOX_LABELS: [&str; 4] = ["BB", "BG", "GB", "GG"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureId {
    /// The four equally likely family types, girl-girl crossed out.
    Boxes,
    /// Blue stripes marking families with a boy carrying the name: one
    /// stripe per child axis, crossing in the two-boy box.
    AdamStripes,
    /// Each box halved by which child joins the walk; boy halves shaded.
    WalkHalves,
    /// Four names as side-by-side stripes keyed to the oldest boy: the
    /// events are disjoint.
    DisjointNames,
    /// Four names as crossing stripes keyed to either boy: the events
    /// overlap.
    OverlappingNames,
}

pub const ALL_FIGURES: [FigureId; 5] = [
    FigureId::Boxes,
    FigureId::AdamStripes,
    FigureId::WalkHalves,
    FigureId::DisjointNames,
    FigureId::OverlappingNames,
];

impl FigureId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::Boxes => "boxes",
            FigureId::AdamStripes => "adam-stripes",
            FigureId::WalkHalves => "walk-halves",
            FigureId::DisjointNames => "disjoint-names",
            FigureId::OverlappingNames => "overlapping-names",
        }
    }

    /// Whether the figure's stripe widths derive from `p`.
    pub fn needs_p(&self) -> bool {
        matches!(
            self,
            FigureId::AdamStripes | FigureId::DisjointNames | FigureId::OverlappingNames
        )
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ALL_FIGURES
            .iter()
            .find(|f| f.as_str() == s)
            .copied()
            .ok_or_else(|| {
                let known: Vec<&str> = ALL_FIGURES.iter().map(|f| f.as_str()).collect();
                format!("unknown figure {s:?} (known: {})", known.join(", "))
            })
    }
}

/// Stripe thickness in pixels: round(100 p), ties to even.
pub fn stripe_px(p: &Rational) -> i64 {
    (p * &Rational::from_int(BOX))
        .round_half_even_i64()
        .expect("p in [0,1] scales into i64")
}

/// Exact blue fraction of the two-boy box in the name-stripe figure, from
/// the same pixel geometry the renderer draws: a vertical and a horizontal
/// stripe of thickness w overlapping in a w x w corner.
pub fn bb_blue_fraction(p: &Rational) -> Rational {
    let w = stripe_px(p);
    Rational::new(2 * w * BOX - w * w, BOX * BOX).expect("box area is nonzero")
}

fn box_x(k: usize) -> i64 {
    MARGIN + k as i64 * (BOX + GAP)
}

struct Svg(String);

impl Svg {
    fn new() -> Svg {
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
        );
        Svg(s)
    }

    fn rect(&mut self, x: i64, y: i64, w: i64, h: i64, fill: &str) {
        if w <= 0 || h <= 0 {
            return;
        }
        let _ = writeln!(
            self.0,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{h}\" fill=\"{fill}\"/>"
        );
    }

    fn line(&mut self, x1: i64, y1: i64, x2: i64, y2: i64) {
        let _ = writeln!(
            self.0,
            "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#000000\" stroke-width=\"2\"/>"
        );
    }

    fn outline(&mut self, x: i64, y: i64, w: i64, h: i64) {
        let _ = writeln!(
            self.0,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{h}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>"
        );
    }

    fn label(&mut self, x: i64, y: i64, text: &str) {
        let _ = writeln!(
            self.0,
            "<text x=\"{x}\" y=\"{y}\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"16\">{text}</text>"
        );
    }

    fn finish(mut self) -> String {
        self.0.push_str("</svg>\n");
        self.0
    }
}

/// A vertical stripe at slot `k` inside box `bx`, clipped to the box.
fn vstripe(svg: &mut Svg, bx: i64, k: i64, w: i64, color: &str) {
    let x = bx + k * w;
    let width = w.min(BOX - k * w);
    svg.rect(x, MARGIN, width, BOX, color);
}

/// A horizontal stripe at slot `k` inside box `bx`, clipped to the box.
fn hstripe(svg: &mut Svg, bx: i64, k: i64, w: i64, color: &str) {
    let y = MARGIN + k * w;
    let height = w.min(BOX - k * w);
    svg.rect(bx, y, BOX, height, color);
}

/// Renders the figure. `p` drives stripe thickness and is required exactly
/// for the figures whose `needs_p` is true.
pub fn render(figure: FigureId, p: Option<&Rational>) -> Result<String, String> {
    let w = if figure.needs_p() {
        let p = p.ok_or_else(|| format!("figure {} requires --p", figure.as_str()))?;
        stripe_px(p)
    } else {
        0
    };
    let mut svg = Svg::new();
    // Fills per box. The first child's name indicator runs along x (a
    // vertical stripe), the second child's along y (a horizontal stripe);
    // boxes are BB, BG, GB, GG left to right.
    for (k, label) in BOX_LABELS.iter().enumerate() {
        let bx = box_x(k);
        match figure {
            FigureId::Boxes => {}
            FigureId::AdamStripes => {
                let blue = PALETTE[0];
                match k {
                    0 => {
                        vstripe(&mut svg, bx, 0, w, blue);
                        hstripe(&mut svg, bx, 0, w, blue);
                    }
                    1 => vstripe(&mut svg, bx, 0, w, blue),
                    2 => hstripe(&mut svg, bx, 0, w, blue),
                    _ => {}
                }
            }
            FigureId::WalkHalves => {
                let blue = PALETTE[0];
                let half = BOX / 2;
                if k == 0 || k == 1 {
                    svg.rect(bx, MARGIN, half, BOX, blue);
                }
                if k == 0 || k == 2 {
                    svg.rect(bx + half, MARGIN, half, BOX, blue);
                }
            }
            FigureId::DisjointNames => match k {
                // Stripes follow the oldest boy: the first child in BB and
                // BG, the second child in GB. Side by side, never crossing.
                0 | 1 => {
                    for (name, color) in PALETTE.iter().enumerate() {
                        vstripe(&mut svg, bx, name as i64, w, color);
                    }
                }
                2 => {
                    for (name, color) in PALETTE.iter().enumerate() {
                        hstripe(&mut svg, bx, name as i64, w, color);
                    }
                }
                _ => {}
            },
            FigureId::OverlappingNames => match k {
                // Either boy may carry each name, so the two-boy box gets
                // both stripe directions and they cross.
                0 => {
                    for (name, color) in PALETTE.iter().enumerate() {
                        vstripe(&mut svg, bx, name as i64, w, color);
                    }
                    for (name, color) in PALETTE.iter().enumerate() {
                        hstripe(&mut svg, bx, name as i64, w, color);
                    }
                }
                1 => {
                    for (name, color) in PALETTE.iter().enumerate() {
                        vstripe(&mut svg, bx, name as i64, w, color);
                    }
                }
                2 => {
                    for (name, color) in PALETTE.iter().enumerate() {
                        hstripe(&mut svg, bx, name as i64, w, color);
                    }
                }
                _ => {}
            },
        }
        if figure == FigureId::WalkHalves {
            svg.line(bx + BOX / 2, MARGIN, bx + BOX / 2, MARGIN + BOX);
        }
        svg.outline(bx, MARGIN, BOX, BOX);
        if figure == FigureId::Boxes && k == 3 {
            svg.line(bx, MARGIN, bx + BOX, MARGIN + BOX);
            svg.line(bx, MARGIN + BOX, bx + BOX, MARGIN);
        }
        svg.label(bx + BOX / 2, MARGIN + BOX + 24, label);
    }
    Ok(svg.finish())
}
