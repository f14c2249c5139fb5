//! Minimal SVG phase portraits on the fixed window `[-1.6, 1.6]^2`.

use std::fmt::Write;

const HALF: f64 = 1.6;
const SIZE: f64 = 480.0;

pub struct Portrait {
    orbits: Vec<(Vec<[f64; 2]>, &'static str, f64)>,
    unit_circle: bool,
}

fn to_px([x, y]: [f64; 2]) -> (f64, f64) {
    ((x + HALF) / (2.0 * HALF) * SIZE, (HALF - y) / (2.0 * HALF) * SIZE)
}

fn inside([x, y]: [f64; 2]) -> bool {
    x.abs() <= HALF && y.abs() <= HALF
}

impl Portrait {
    pub fn new(unit_circle: bool) -> Self {
        Portrait {
            orbits: Vec::new(),
            unit_circle,
        }
    }

    /// Background orbit.
    pub fn orbit(&mut self, pts: Vec<[f64; 2]>) {
        self.orbits.push((pts, "#777777", 0.8));
    }

    /// Highlighted orbit, e.g. a detected cycle.
    pub fn cycle(&mut self, pts: Vec<[f64; 2]>) {
        self.orbits.push((pts, "#c0392b", 2.0));
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
        let (ox, oy) = to_px([0.0, 0.0]);
        let _ = writeln!(
            s,
            r##"<path d="M0 {oy:.2} H{SIZE} M{ox:.2} 0 V{SIZE}" stroke="#cccccc" stroke-width="1"/>"##
        );
        if self.unit_circle {
            let r = SIZE / (2.0 * HALF);
            let _ = writeln!(
                s,
                r##"<circle cx="{ox:.2}" cy="{oy:.2}" r="{r:.2}" fill="none" stroke="#2471a3" stroke-width="1" stroke-dasharray="4 3"/>"##
            );
        }
        for (pts, color, width) in &self.orbits {
            for piece in pts.split(|p| !inside(*p)).filter(|p| p.len() > 1) {
                let mut d = String::new();
                for p in piece {
                    let (px, py) = to_px(*p);
                    let _ = write!(d, "{px:.2},{py:.2} ");
                }
                let _ = writeln!(
                    s,
                    r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}"/>"#,
                    d.trim_end()
                );
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clips_to_window() {
        let mut p = Portrait::new(true);
        p.orbit(vec![[0.0, 0.0], [1.0, 0.0], [5.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let svg = p.render();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("<circle"));
        assert!(svg.contains("240.00,240.00 390.00,240.00"));
    }
}
