use std::fmt::Write;

/// Minimal SVG document builder in math orientation (y up).
pub struct Svg {
    half_extent: f64,
    body: String,
}

impl Svg {
    /// Square canvas centred on the origin showing `[-half_extent, half_extent]²`.
    pub fn centered(half_extent: f64) -> Self {
        Svg { half_extent: half_extent.max(1e-12) * 1.05, body: String::new() }
    }

    fn stroke(&self) -> f64 {
        self.half_extent / 400.0
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], closed: bool, color: &str) {
        let mut pts = String::new();
        for (x, y) in points.iter().chain(closed.then(|| &points[0])) {
            let _ = write!(pts, "{:.9},{:.9} ", x, -y);
        }
        let _ = writeln!(
            self.body,
            r#"  <polyline points="{}" fill="none" stroke="{color}" stroke-width="{:.6}"/>"#,
            pts.trim_end(),
            self.stroke()
        );
    }

    pub fn line(&mut self, from: (f64, f64), to: (f64, f64), color: &str) {
        let _ = writeln!(
            self.body,
            r#"  <line x1="{:.9}" y1="{:.9}" x2="{:.9}" y2="{:.9}" stroke="{color}" stroke-width="{:.6}"/>"#,
            from.0,
            -from.1,
            to.0,
            -to.1,
            self.stroke()
        );
    }

    pub fn dot(&mut self, at: (f64, f64), color: &str) {
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{:.9}" cy="{:.9}" r="{:.6}" fill="{color}"/>"#,
            at.0,
            -at.1,
            3.0 * self.stroke()
        );
    }

    pub fn finish(self) -> String {
        let h = self.half_extent;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.9} {:.9} {:.9} {:.9}\">\n{}</svg>\n",
            -h,
            -h,
            2.0 * h,
            2.0 * h,
            self.body
        )
    }
}
