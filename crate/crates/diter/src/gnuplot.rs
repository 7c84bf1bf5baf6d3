//! gnuplot 5 scripts for the emitted traces.

use std::fmt::Write as _;

use diter_core::SchemeKind;

/// Script drawing residual fluid per iteration (log scale) for every scheme,
/// then the cancelled fluid. It expects to run from the directory holding
/// the `<case>_<scheme>.csv` files.
pub fn plot_script(case: &str, schemes: &[SchemeKind]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {case}: residual and cancelled fluid per iteration");
    s.push_str("set datafile separator ','\n");
    s.push_str("set terminal pngcairo size 900,600\n");
    s.push_str("set logscale y\n");
    s.push_str("set format y '10^{%L}'\n");
    s.push_str("set xlabel 'iteration'\n");
    s.push_str("set key top right\n\n");

    let _ = writeln!(s, "set output '{case}_residual.png'");
    s.push_str("set ylabel 'residual fluid (L1)'\n");
    plot_column(&mut s, case, schemes, 2);

    s.push('\n');
    let _ = writeln!(s, "set output '{case}_cancelled.png'");
    s.push_str("set ylabel 'cancelled fluid'\n");
    plot_column(&mut s, case, schemes, 3);
    s.push_str("unset output\n");
    s
}

fn plot_column(s: &mut String, case: &str, schemes: &[SchemeKind], column: usize) {
    let series: Vec<String> = schemes
        .iter()
        .map(|k| {
            format!(
                "'{case}_{}.csv' skip 1 using 1:{column} with linespoints title '{}'",
                k.short_name(),
                k.label()
            )
        })
        .collect();
    let _ = writeln!(s, "plot {}", series.join(", \\\n     "));
}
