//! Gnuplot scripts for the CSV outputs.

use std::path::Path;

use crate::traveling_wave::WaveConstants;

fn quoted(p: &Path) -> String {
    format!("'{}'", p.display().to_string().replace('\'', "''"))
}

/// Resultant sign map and eigenvalue sign-pattern map over `(s, τ)`.
pub fn scan_script(csv: &Path) -> String {
    let data = quoted(csv);
    format!(
        "set datafile separator ','
set terminal pngcairo size 900,700
set xlabel 's'
set ylabel 'tau'
set palette defined (-1 'white', 1 'grey40')
set cbrange [-1:1]

set output 'resultant_sign.png'
set title 'sign of Res(p, p'') of the characteristic polynomial'
plot {data} every ::1 using 1:2:(sgn($8)) with points pt 5 ps 1 lc palette notitle

set output 'sign_pattern.png'
set title 'number of positive characteristic speeds'
set palette defined (2 'white', 3 'grey40')
set cbrange [2:3]
plot {data} every ::1 using 1:2:9 with points pt 5 ps 1 lc palette notitle
"
    )
}

/// Depth checkpoints and phase portraits against the exact curve `(hḣ)² = m² F₃(h)`.
pub fn simulate_script(
    fields: &[String],
    portraits: &[String],
    c: &WaveConstants,
    h1: f64,
    h2: f64,
) -> String {
    let mut s = String::from("set datafile separator ','\nset terminal pngcairo size 900,700\n\n");
    s += &format!(
        "m = {}\ni3 = {}\nh0 = {}\nh1 = {}\nh2 = {}\n",
        c.m,
        c.i3,
        c.i3 / (h1 * h2),
        h1,
        h2
    );
    s += "F3(h) = 3.0 / i3 * (h - h0) * (h - h1) * (h2 - h)\n";
    s += "curve(h) = (F3(h) > 0) ? abs(m) * sqrt(F3(h)) : 0\n\n";
    s += "set output 'depth.png'\nset xlabel 'x'\nset ylabel 'h'\nplot ";
    s += &fields
        .iter()
        .map(|f| format!("'{f}' every ::1 using 1:2 with lines title '{f}'"))
        .collect::<Vec<_>>()
        .join(", \\\n     ");
    s += "\n\nset output 'portrait.png'\nset xlabel 'h'\nset ylabel 'h hdot'\nset samples 2000\n";
    s += "plot [h1:h2] curve(x) with lines lc 'black' title 'exact', -curve(x) with lines lc 'black' notitle";
    for p in portraits {
        s += &format!(", \\\n     '{p}' every ::1 using 1:2 with dots title '{p}'");
    }
    s.push('\n');
    s
}
