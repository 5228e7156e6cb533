//! Text renderings of braid circuits.
//!
//! Gates are packed greedily into layers: a gate goes one layer past the
//! last gate whose mode range `[min, max]` overlaps its own, so gates that
//! share a layer have disjoint supports and commute.

use std::fmt::Write;

use crate::majorana::{BraidGate, BraidKind, Circuit, Direction};

/// Gate indices per layer, in time order.
pub fn layers(circuit: &Circuit) -> Vec<Vec<usize>> {
    let mut next_free = vec![0usize; circuit.n_modes()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (idx, g) in circuit.gates().iter().enumerate() {
        let (lo, hi) = span(g);
        let layer = next_free[lo..=hi].iter().copied().max().unwrap_or(0);
        if layer == out.len() {
            out.push(Vec::new());
        }
        out[layer].push(idx);
        for slot in &mut next_free[lo..=hi] {
            *slot = layer + 1;
        }
    }
    out
}

fn span(g: &BraidGate) -> (usize, usize) {
    let m = g.modes();
    (m[0], m[m.len() - 1])
}

/// Wire label: `a0, a1, …` for ancillas, then `c0, c1, …` for code modes.
pub fn wire_label(mode: usize, n_ancillas: usize) -> String {
    if mode < n_ancillas {
        format!("a{mode}")
    } else {
        format!("c{}", mode - n_ancillas)
    }
}

fn marker(g: &BraidGate) -> char {
    match (g.kind(), g.direction()) {
        (BraidKind::Braid2, Direction::Forward) => 'X',
        (BraidKind::Braid2, Direction::Reverse) => 'x',
        (BraidKind::Braid4, Direction::Forward) => 'Q',
        (BraidKind::Braid4, Direction::Reverse) => 'q',
    }
}

/// ASCII diagram, one wire per mode. `X`/`x` mark forward/reverse Braid2
/// modes, `Q`/`q` Braid4 modes and `|` a connector crossing a wire.
pub fn render_ascii(circuit: &Circuit, n_ancillas: usize) -> String {
    let n = circuit.n_modes();
    let labels: Vec<String> = (0..n).map(|m| wire_label(m, n_ancillas)).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(0);
    let mut rows: Vec<String> = labels.iter().map(|l| format!("{l:>width$} -")).collect();
    for layer in layers(circuit) {
        let mut cells = vec!['-'; n];
        for &idx in &layer {
            let g = &circuit.gates()[idx];
            let (lo, hi) = span(g);
            for cell in &mut cells[lo..=hi] {
                *cell = '|';
            }
            for &m in g.modes() {
                cells[m] = marker(g);
            }
        }
        for (row, c) in rows.iter_mut().zip(cells) {
            row.push(c);
            row.push('-');
        }
    }
    let mut out = String::new();
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// quantikz listing: Braid2 as a swap pair, Braid4 as a chain of controls.
/// Each layer is preceded by comment lines naming its gates.
pub fn render_latex(circuit: &Circuit, n_ancillas: usize) -> String {
    let n = circuit.n_modes();
    let layers = layers(circuit);
    let mut grid = vec![vec![String::from("\\qw"); layers.len()]; n];
    let mut out = String::new();
    for (col, layer) in layers.iter().enumerate() {
        for &idx in layer {
            let g = &circuit.gates()[idx];
            writeln!(out, "% layer {col}: {g}").expect("write to string");
            let modes = g.modes();
            match g.kind() {
                BraidKind::Braid2 => {
                    grid[modes[0]][col] = format!("\\swap{{{}}}", modes[1] - modes[0]);
                    grid[modes[1]][col] = "\\targX{}".into();
                }
                BraidKind::Braid4 => {
                    for w in modes.windows(2) {
                        grid[w[0]][col] = format!("\\ctrl{{{}}}", w[1] - w[0]);
                    }
                    grid[modes[3]][col] = "\\control{}".into();
                }
            }
        }
    }
    out.push_str("\\begin{quantikz}\n");
    for (m, row) in grid.iter().enumerate() {
        let label = wire_label(m, n_ancillas);
        let (head, idx) = label.split_at(1);
        write!(out, "\\lstick{{${head}_{{{idx}}}$}}").expect("write to string");
        for cell in row {
            write!(out, " & {cell}").expect("write to string");
        }
        out.push_str(" & \\qw");
        if m + 1 < n {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{quantikz}\n");
    out
}
