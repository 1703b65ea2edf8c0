//! A small DPLL solver over DIMACS-style clauses, used only as an oracle.

/// Parses `p cnf` text, ignoring comment lines.
pub fn parse_dimacs(text: &str) -> (usize, Vec<Vec<i32>>) {
    let mut vars = 0;
    let mut clauses = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let mut it = rest.split_whitespace();
            vars = it.next().unwrap().parse().unwrap();
            continue;
        }
        let lits: Vec<i32> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
        assert_eq!(lits.last(), Some(&0), "clause line must end in 0: {line}");
        clauses.push(lits[..lits.len() - 1].to_vec());
    }
    (vars, clauses)
}

/// `assignment[v]` is the value of variable `v`; index 0 is unused.
pub fn solve(vars: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    let mut assign: Vec<Option<bool>> = vec![None; vars + 1];
    if search(clauses, &mut assign) {
        Some(assign.into_iter().map(|v| v.unwrap_or(false)).collect())
    } else {
        None
    }
}

fn value(assign: &[Option<bool>], lit: i32) -> Option<bool> {
    assign[lit.unsigned_abs() as usize].map(|v| v == (lit > 0))
}

fn search(clauses: &[Vec<i32>], assign: &mut Vec<Option<bool>>) -> bool {
    let mut trail = Vec::new();
    // unit propagation to a fixpoint
    loop {
        let mut unit = None;
        for c in clauses {
            let mut open = None;
            let mut open_count = 0;
            let mut sat = false;
            for &l in c {
                match value(assign, l) {
                    Some(true) => {
                        sat = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open = Some(l);
                        open_count += 1;
                    }
                }
            }
            if sat {
                continue;
            }
            match open_count {
                0 => {
                    undo(assign, &trail);
                    return false;
                }
                1 => {
                    unit = open;
                    break;
                }
                _ => {}
            }
        }
        match unit {
            Some(l) => {
                assign[l.unsigned_abs() as usize] = Some(l > 0);
                trail.push(l.unsigned_abs() as usize);
            }
            None => break,
        }
    }

    let branch = clauses
        .iter()
        .filter(|c| !c.iter().any(|&l| value(assign, l) == Some(true)))
        .flat_map(|c| c.iter())
        .find(|&&l| value(assign, l).is_none())
        .map(|l| l.unsigned_abs() as usize);
    let Some(v) = branch else {
        return true;
    };
    for choice in [true, false] {
        assign[v] = Some(choice);
        if search(clauses, assign) {
            return true;
        }
    }
    assign[v] = None;
    undo(assign, &trail);
    false
}

fn undo(assign: &mut [Option<bool>], trail: &[usize]) {
    for &v in trail {
        assign[v] = None;
    }
}

pub fn satisfies(assignment: &[bool], clauses: &[Vec<i32>]) -> bool {
    clauses
        .iter()
        .all(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize] == (l > 0)))
}
