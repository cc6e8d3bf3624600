//! SVG renderers: outcome bar chart and per-trial track plots.
//!
//! Everything is emitted with fixed-precision coordinates and no randomness
//! or timestamps, so a given input always renders to identical bytes.

use std::fmt::Write;

use super::output::Summary;
use crate::arena::TrialRecord;
use crate::engagement::{EngagementParams, Outcome};

const BLUE: &str = "#1f77b4";
const RED: &str = "#d62728";
const GRAY: &str = "#7f7f7f";

/// Grouped bar chart of the three outcome probabilities.
pub fn bar_chart_svg(summary: &Summary) -> String {
    let (width, height) = (420.0, 300.0);
    let (ml, mr, mt, mb) = (52.0, 16.0, 34.0, 42.0);
    let (pw, ph) = (width - ml - mr, height - mt - mb);
    let y_of = |p: f64| mt + (1.0 - p) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\">"
    );
    let _ = writeln!(s, "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">case {} \
         &#8212; {} trials, seed {}</text>",
        ml + pw / 2.0,
        summary.case,
        summary.m_s,
        summary.seed
    );
    for i in 0..=4 {
        let p = f64::from(i) * 0.25;
        let y = y_of(p);
        let _ = writeln!(
            s,
            "<line x1=\"{ml}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/>",
            ml + pw
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"10\">{p:.2}</text>",
            ml - 6.0,
            y + 3.5
        );
    }
    let bars = [
        ("p_w1", summary.p_w1, summary.m_w1, BLUE),
        ("p_w2", summary.p_w2, summary.m_w2, RED),
        ("p_d", summary.p_d, summary.m_d, GRAY),
    ];
    let bar_w = 54.0;
    for (i, (label, p, count, color)) in bars.iter().enumerate() {
        let cx = ml + (i as f64 + 0.5) * pw / 3.0;
        let x = cx - bar_w / 2.0;
        let y = y_of(*p);
        let _ = writeln!(
            s,
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{bar_w}\" height=\"{:.2}\" \
             fill=\"{color}\"/>",
            y_of(0.0) - y
        );
        let _ = writeln!(
            s,
            "<text x=\"{cx:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\">\
             {p:.3} ({count})</text>",
            y - 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{cx:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\">\
             {label}</text>",
            height - mb + 16.0
        );
    }
    let _ = writeln!(
        s,
        "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{:.2}\" stroke=\"black\"/>",
        mt + ph
    );
    let _ = writeln!(
        s,
        "<line x1=\"{ml}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
        mt + ph,
        ml + pw,
        mt + ph
    );
    s.push_str("</svg>\n");
    s
}

/// Track plot of one recorded trial: both trajectories, per-second
/// timestamps, start/end markers, and the winner's final bearing cone.
pub fn track_svg(record: &TrialRecord, eng: &EngagementParams) -> String {
    let size = 640.0;
    let margin = 36.0;

    let pts1: Vec<(f64, f64)> = record.states.iter().map(|s| (s.ac1.x, s.ac1.y)).collect();
    let pts2: Vec<(f64, f64)> = record.states.iter().map(|s| (s.ac2.x, s.ac2.y)).collect();

    // winner's final pose, for the cone annotation
    let last = record.states.last().expect("records hold at least one state");
    let cone = match record.outcome {
        Outcome::Win1 => Some((last.ac1, BLUE)),
        Outcome::Win2 => Some((last.ac2, RED)),
        _ => None,
    };

    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let mut cover = |x: f64, y: f64| {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    };
    for &(x, y) in pts1.iter().chain(&pts2) {
        cover(x, y);
    }
    if let Some((apex, _)) = cone {
        cover(apex.x - eng.d_max, apex.y - eng.d_max);
        cover(apex.x + eng.d_max, apex.y + eng.d_max);
    }
    let pad = 0.75;
    min_x -= pad;
    min_y -= pad;
    max_x += pad;
    max_y += pad;
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let scale = (size - 2.0 * margin) / span;
    // center the shorter axis; y points up in the world, down in SVG
    let off_x = (span - (max_x - min_x)) / 2.0;
    let off_y = (span - (max_y - min_y)) / 2.0;
    let map = |x: f64, y: f64| {
        (
            margin + (x - min_x + off_x) * scale,
            size - margin - (y - min_y + off_y) * scale,
        )
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\" font-family=\"sans-serif\">"
    );
    let _ = writeln!(s, "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">trial {} \
         &#8212; {:?} after {} s</text>",
        size / 2.0,
        record.trial,
        record.outcome,
        record.time_of(record.states.len() - 1)
    );

    if let Some((apex, color)) = cone {
        let (ax, ay) = map(apex.x, apex.y);
        let mut path = format!("M {ax:.2} {ay:.2}");
        let segments = 24;
        for i in 0..=segments {
            let angle = apex.theta - eng.bearing_max
                + 2.0 * eng.bearing_max * f64::from(i) / f64::from(segments);
            let (px, py) = map(apex.x + eng.d_max * angle.cos(), apex.y + eng.d_max * angle.sin());
            let _ = write!(path, " L {px:.2} {py:.2}");
        }
        path.push_str(" Z");
        let _ = writeln!(
            s,
            "<path d=\"{path}\" fill=\"{color}\" fill-opacity=\"0.12\" stroke=\"{color}\" \
             stroke-opacity=\"0.4\"/>"
        );
    }

    for (pts, color, name) in [(&pts1, BLUE, "aircraft 1"), (&pts2, RED, "aircraft 2")] {
        let mut poly = String::new();
        for &(x, y) in pts.iter() {
            let (px, py) = map(x, y);
            let _ = write!(poly, "{px:.2},{py:.2} ");
        }
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            poly.trim_end()
        );
        // per-second timestamps: a dot at every decision step, a label each
        // 5 s plus the endpoints
        for (i, &(x, y)) in pts.iter().enumerate() {
            let (px, py) = map(x, y);
            let _ = writeln!(s, "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"1.4\" fill=\"{color}\"/>");
            if i % 5 == 0 || i == pts.len() - 1 {
                let _ = writeln!(
                    s,
                    "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"7\" fill=\"{color}\">{:.0}</text>",
                    px + 2.5,
                    py - 2.5,
                    record.time_of(i)
                );
            }
        }
        let (sx, sy) = map(pts[0].0, pts[0].1);
        let (ex, ey) = map(pts[pts.len() - 1].0, pts[pts.len() - 1].1);
        let _ = writeln!(
            s,
            "<circle cx=\"{sx:.2}\" cy=\"{sy:.2}\" r=\"5\" fill=\"none\" stroke=\"{color}\" \
             stroke-width=\"1.5\"/>"
        );
        let _ = writeln!(s, "<circle cx=\"{ex:.2}\" cy=\"{ey:.2}\" r=\"5\" fill=\"{color}\"/>");
        let _ = writeln!(s, "<!-- {name} -->");
    }

    let _ = writeln!(
        s,
        "<text x=\"{margin}\" y=\"{:.1}\" font-size=\"11\" fill=\"{BLUE}\">&#9679; aircraft 1\
         </text>",
        size - 14.0
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" fill=\"{RED}\">&#9679; aircraft 2</text>",
        margin + 90.0,
        size - 14.0
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{baseline_engagement, CaseId, CaseSpec, run_mc_study};
    use crate::cli::config::ResolvedConfig;
    use crate::cli::output::Summary;

    fn tiny_study() -> (Summary, Vec<TrialRecord>) {
        let spec = CaseSpec::preset(CaseId::I);
        let (mc, records) = run_mc_study(&spec, 4, 5, false).unwrap();
        let cfg = ResolvedConfig::preset(CaseId::I);
        (Summary::new(&cfg, &mc), records)
    }

    #[test]
    fn renders_are_deterministic_and_well_formed() {
        let (summary, records) = tiny_study();
        let bars = bar_chart_svg(&summary);
        assert_eq!(bars, bar_chart_svg(&summary));
        assert!(bars.starts_with("<svg") && bars.ends_with("</svg>\n"));
        assert_eq!(bars.matches("<rect").count(), 4); // background + 3 bars

        let eng = baseline_engagement();
        let track = track_svg(&records[0], &eng);
        assert_eq!(track, track_svg(&records[0], &eng));
        assert!(track.starts_with("<svg") && track.ends_with("</svg>\n"));
        assert_eq!(track.matches("<polyline").count(), 2);
    }

    #[test]
    fn winner_cone_is_drawn_only_for_decided_trials() {
        let (_, records) = tiny_study();
        let eng = baseline_engagement();
        for record in &records {
            let track = track_svg(record, &eng);
            let cones = track.matches("<path").count();
            match record.outcome {
                Outcome::Win1 | Outcome::Win2 => assert_eq!(cones, 1),
                _ => assert_eq!(cones, 0),
            }
        }
    }
}
