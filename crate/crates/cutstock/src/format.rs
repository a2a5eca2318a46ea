//! Line-oriented text format for instances.
//!
//! ```text
//! # comment
//! master 132
//! order 44 2 2
//! order 33 3 3
//! order 12 6 *
//! ```
//!
//! The first significant line declares the master width; each following line
//! declares one order as `order <size> <qmin> <qmax|*>`, where `*` means the
//! upper bound is absent. Comments start with `#`, blank lines are ignored.

use crate::error::{Error, Result};
use crate::instance::{Instance, MaxQty, Order};

/// A parsed instance together with the original file positions of its orders:
/// `file_positions[j]` is the 0-based position in the file (among order
/// lines) of the order at sorted index `j`.
#[derive(Debug, Clone)]
pub struct ParsedInstance {
    pub instance: Instance,
    pub file_positions: Vec<usize>,
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_labeled(text).map(|p| p.instance)
}

pub fn parse_instance_labeled(text: &str) -> Result<ParsedInstance> {
    let mut master: Option<(u64, usize)> = None;
    let mut orders: Vec<(Order, usize)> = Vec::new();
    let mut order_lines = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let keyword = parts.next().unwrap();
        match keyword {
            "master" => {
                if master.is_some() {
                    return Err(parse_err(line, "duplicate `master` line"));
                }
                if !orders.is_empty() {
                    return Err(parse_err(line, "`master` must precede all `order` lines"));
                }
                let w = parse_int(line, parts.next(), "master width")?;
                if parts.next().is_some() {
                    return Err(parse_err(line, "trailing tokens after `master <width>`"));
                }
                if w == 0 {
                    return Err(parse_err(line, "master width must be positive"));
                }
                master = Some((w, line));
            }
            "order" => {
                let (master_width, _) =
                    master.ok_or_else(|| parse_err(line, "`order` before `master`"))?;
                let size = parse_int(line, parts.next(), "order size")?;
                let qmin = parse_int(line, parts.next(), "minimum quantity")?;
                let qmax = match parts.next() {
                    Some("*") => MaxQty::Unbounded,
                    Some(tok) => MaxQty::Bounded(parse_int(line, Some(tok), "maximum quantity")?),
                    None => return Err(parse_err(line, "missing maximum quantity (or `*`)")),
                };
                if parts.next().is_some() {
                    return Err(parse_err(
                        line,
                        "trailing tokens after `order <size> <qmin> <qmax|*>`",
                    ));
                }
                if size == 0 {
                    return Err(parse_err(line, "order size must be positive"));
                }
                if size > master_width {
                    return Err(parse_err(
                        line,
                        format!("order size {size} exceeds master width {master_width}"),
                    ));
                }
                if !qmax.allows(qmin) {
                    return Err(parse_err(
                        line,
                        format!("minimum quantity {qmin} exceeds maximum {qmax}"),
                    ));
                }
                if let Some((prev, _)) = orders.iter().find(|(o, _)| o.size() == size) {
                    let _ = prev;
                    return Err(parse_err(line, format!("duplicate order size {size}")));
                }
                let order = Order::new(size, qmin, qmax)
                    .map_err(|e| parse_err(line, e.to_string()))?;
                orders.push((order, order_lines));
                order_lines += 1;
            }
            other => {
                return Err(parse_err(line, format!("unknown line kind `{other}`")));
            }
        }
    }

    let (master_width, _) = master.ok_or_else(|| parse_err(0, "missing `master` line"))?;
    if orders.is_empty() {
        return Err(parse_err(0, "no `order` lines"));
    }
    // Sort the way Instance::new sorts so the label map lines up.
    orders.sort_by(|a, b| b.0.size().cmp(&a.0.size()));
    let file_positions = orders.iter().map(|(_, pos)| *pos).collect();
    let instance = Instance::new(master_width, orders.into_iter().map(|(o, _)| o).collect())?;
    Ok(ParsedInstance {
        instance,
        file_positions,
    })
}

fn parse_int(line: usize, token: Option<&str>, what: &str) -> Result<u64> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token
        .parse::<u64>()
        .map_err(|_| parse_err(line, format!("invalid {what} `{token}`")))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Inverse of [`parse_instance`]: `parse_instance(&emit_instance(i)) == i`.
pub fn emit_instance(instance: &Instance) -> String {
    let mut out = format!("master {}\n", instance.master_width());
    for order in instance.orders() {
        match order.max_qty() {
            MaxQty::Bounded(q) => {
                out.push_str(&format!("order {} {} {}\n", order.size(), order.min_qty(), q))
            }
            MaxQty::Unbounded => {
                out.push_str(&format!("order {} {} *\n", order.size(), order.min_qty()))
            }
        }
    }
    out
}
