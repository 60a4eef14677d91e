/// A Cayley table with `corner` in the top-left cell, rows and columns in
/// the order of `ids`.
pub fn table(corner: &str, labels: &[String], ids: &[usize], mul: impl Fn(usize, usize) -> usize) -> String {
    let width = |s: &str| s.chars().count();
    let w = ids
        .iter()
        .map(|&i| width(&labels[i]))
        .chain([width(corner)])
        .max()
        .unwrap_or(1);
    let pad = |s: &str| format!("{s}{}", " ".repeat(w - width(s)));
    let mut out = String::new();
    let header: Vec<String> = ids.iter().map(|&i| pad(&labels[i])).collect();
    out.push_str(&format!("{} | {}\n", pad(corner), header.join(" ")));
    out.push_str(&format!(
        "{}-+-{}\n",
        "-".repeat(w),
        "-".repeat(header.join(" ").chars().count())
    ));
    for &r in ids {
        let cells: Vec<String> = ids.iter().map(|&c| pad(&labels[mul(r, c)])).collect();
        out.push_str(&format!("{} | {}\n", pad(&labels[r]), cells.join(" ")));
    }
    out
}

/// Two-column listing, left column padded.
pub fn pairs(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|(a, _)| a.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(a, b)| format!("{a}{}  {b}\n", " ".repeat(w - a.chars().count())))
        .collect()
}
