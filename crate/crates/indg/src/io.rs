//! Text formats for game instances and strategy profiles.
//!
//! Instance format, in order, with `#` comments and blank lines ignored:
//!
//! ```text
//! g1 <n>                  # first-network node count
//! <u> <v>                 # zero or more g1 edges, 0-based
//! g2 <m>
//! <u> <v>
//! gi complete             # or bare `gi` followed by `<i> <j>` pairs,
//! ...                     # meaning player i depends on g2 node j
//! player <i> cost <c> benefits <b1> <b2> ... <bK>
//! ```
//!
//! Every player index in `0..n` must get exactly one `player` line. The
//! writer emits the canonical form (sorted edges, players in order), so
//! write-then-parse round-trips exactly.
//!
//! Profile format: a `profile <n>` header, then `<i> <j>` lines giving the
//! interconnection edges player `i` built to g2 node `j`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::game::{BenefitFunction, GameInstance, Player, StrategyProfile};
use crate::graph::Graph;

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

fn parse_index(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{token}`")))
}

fn parse_float(token: &str, line: usize, what: &str) -> Result<f64> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{token}`")))
}

#[derive(PartialEq)]
enum Section {
    ExpectG1,
    G1Edges,
    G2Edges,
    DependencyEdges,
    Players,
}

/// Parses the instance format. Violations of the game invariants (bad
/// indices, non-monotone benefit tables, nonpositive costs, missing player
/// lines) are reported with the offending line number.
pub fn parse_instance(text: &str) -> Result<GameInstance> {
    let mut section = Section::ExpectG1;
    let mut g1: Option<Graph> = None;
    let mut g2: Option<Graph> = None;
    let mut complete_deps = false;
    let mut dep_edges: Vec<(usize, usize)> = Vec::new();
    let mut players: Vec<Option<Player>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields[0] {
            "g1" => {
                if section != Section::ExpectG1 {
                    return Err(Error::parse(line, "unexpected `g1` section"));
                }
                if fields.len() != 2 {
                    return Err(Error::parse(line, "expected `g1 <node_count>`"));
                }
                let n = parse_index(fields[1], line, "node count")?;
                g1 = Some(Graph::new(n));
                players = vec![None; n];
                section = Section::G1Edges;
            }
            "g2" => {
                if section != Section::G1Edges {
                    return Err(Error::parse(line, "`g2` section must follow the g1 edges"));
                }
                if fields.len() != 2 {
                    return Err(Error::parse(line, "expected `g2 <node_count>`"));
                }
                let m = parse_index(fields[1], line, "node count")?;
                g2 = Some(Graph::new(m));
                section = Section::G2Edges;
            }
            "gi" => {
                if section != Section::G2Edges {
                    return Err(Error::parse(line, "`gi` section must follow the g2 edges"));
                }
                match fields.len() {
                    1 => {}
                    2 if fields[1] == "complete" => complete_deps = true,
                    _ => return Err(Error::parse(line, "expected `gi` or `gi complete`")),
                }
                section = Section::DependencyEdges;
            }
            "player" => {
                if section != Section::DependencyEdges && section != Section::Players {
                    return Err(Error::parse(line, "`player` lines must follow the gi section"));
                }
                section = Section::Players;
                if fields.len() < 5 || fields[2] != "cost" || fields[4] != "benefits" {
                    return Err(Error::parse(
                        line,
                        "expected `player <i> cost <c> benefits <b1> ...`",
                    ));
                }
                let i = parse_index(fields[1], line, "player index")?;
                if i >= players.len() {
                    return Err(Error::parse(
                        line,
                        format!("player {i} out of range for {} g1 nodes", players.len()),
                    ));
                }
                if players[i].is_some() {
                    return Err(Error::parse(line, format!("duplicate player {i}")));
                }
                let cost = parse_float(fields[3], line, "cost")?;
                let table: Result<Vec<f64>> = fields[5..]
                    .iter()
                    .map(|t| parse_float(t, line, "benefit"))
                    .collect();
                let benefit = BenefitFunction::new(table?)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
                players[i] = Some(
                    Player::new(benefit, cost).map_err(|e| Error::parse(line, e.to_string()))?,
                );
            }
            _ => match section {
                Section::G1Edges | Section::G2Edges | Section::DependencyEdges => {
                    if fields.len() != 2 {
                        return Err(Error::parse(line, format!("expected `u v`, got `{content}`")));
                    }
                    let u = parse_index(fields[0], line, "index")?;
                    let v = parse_index(fields[1], line, "index")?;
                    match section {
                        Section::G1Edges => {
                            g1.as_mut()
                                .unwrap()
                                .add_edge(u, v)
                                .map_err(|e| Error::parse(line, e.to_string()))?;
                        }
                        Section::G2Edges => {
                            g2.as_mut()
                                .unwrap()
                                .add_edge(u, v)
                                .map_err(|e| Error::parse(line, e.to_string()))?;
                        }
                        Section::DependencyEdges => {
                            if complete_deps {
                                return Err(Error::parse(
                                    line,
                                    "edge list not allowed after `gi complete`",
                                ));
                            }
                            dep_edges.push((u, v));
                        }
                        _ => unreachable!(),
                    }
                }
                _ => return Err(Error::parse(line, format!("unexpected line `{content}`"))),
            },
        }
    }

    let g1 = g1.ok_or_else(|| Error::parse(last_line, "missing `g1` section"))?;
    let g2 = g2.ok_or_else(|| Error::parse(last_line, "missing `g2` section"))?;
    if section != Section::Players && !players.is_empty() {
        return Err(Error::parse(last_line, "missing `player` lines"));
    }
    let players: Vec<Player> = players
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| Error::parse(last_line, format!("missing player {i}"))))
        .collect::<Result<_>>()?;
    if complete_deps {
        GameInstance::with_complete_dependencies(g1, g2, players)
    } else {
        GameInstance::new(g1, g2, &dep_edges, players)
    }
}

/// Canonical text form of an instance; `parse_instance` inverts it exactly.
pub fn write_instance(inst: &GameInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!("g1 {}\n", inst.n()));
    for (u, v) in inst.g1().edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out.push_str(&format!("g2 {}\n", inst.m()));
    for (u, v) in inst.g2().edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    if inst.is_complete_bipartite() && inst.m() > 0 {
        out.push_str("gi complete\n");
    } else {
        out.push_str("gi\n");
        for (i, j) in inst.dependency_edges() {
            out.push_str(&format!("{i} {j}\n"));
        }
    }
    for (i, p) in inst.players().iter().enumerate() {
        out.push_str(&format!("player {i} cost {} benefits", p.edge_cost));
        for b in p.benefit.table() {
            out.push_str(&format!(" {b}"));
        }
        out.push('\n');
    }
    out
}

/// Parses the profile format against known instance dimensions.
pub fn parse_profile(text: &str, n: usize, m: usize) -> Result<StrategyProfile> {
    let mut actions: Option<Vec<BTreeSet<usize>>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match &mut actions {
            None => {
                if fields.len() != 2 || fields[0] != "profile" {
                    return Err(Error::parse(line, "expected header `profile <n>`"));
                }
                let count = parse_index(fields[1], line, "player count")?;
                if count != n {
                    return Err(Error::parse(
                        line,
                        format!("profile declares {count} players, instance has {n}"),
                    ));
                }
                actions = Some(vec![BTreeSet::new(); n]);
            }
            Some(actions) => {
                if fields.len() != 2 {
                    return Err(Error::parse(line, format!("expected `i j`, got `{content}`")));
                }
                let i = parse_index(fields[0], line, "player index")?;
                let j = parse_index(fields[1], line, "g2 node")?;
                if i >= n {
                    return Err(Error::parse(line, format!("player {i} out of range")));
                }
                if j >= m {
                    return Err(Error::parse(line, format!("g2 node {j} out of range")));
                }
                actions[i].insert(j);
            }
        }
    }
    match actions {
        Some(actions) => Ok(StrategyProfile::from_actions(actions)),
        None => Err(Error::parse(0, "empty profile file")),
    }
}

/// Canonical text form of a profile.
pub fn write_profile(profile: &StrategyProfile) -> String {
    let mut out = format!("profile {}\n", profile.len());
    for (i, action) in profile.actions().iter().enumerate() {
        for &j in action {
            out.push_str(&format!("{i} {j}\n"));
        }
    }
    out
}

/// Parses a bare dependency list: `<i> <j>` pairs with comments allowed.
pub fn parse_dependency_list(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(line, format!("expected `i j`, got `{content}`")));
        }
        edges.push((
            parse_index(fields[0], line, "player index")?,
            parse_index(fields[1], line, "g2 node")?,
        ));
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::nine_player_instance;

    #[test]
    fn instance_round_trip() {
        let inst = nine_player_instance();
        let text = write_instance(&inst);
        let parsed = parse_instance(&text).unwrap();
        assert_eq!(parsed, inst);
        assert_eq!(write_instance(&parsed), text);
    }

    #[test]
    fn explicit_dependency_round_trip() {
        let g1 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let g2 = Graph::new(3);
        let players = vec![
            Player::new(BenefitFunction::new(vec![1.0, 0.5]).unwrap(), 0.25).unwrap(),
            Player::new(BenefitFunction::new(vec![2.0]).unwrap(), 1.5).unwrap(),
        ];
        let inst = GameInstance::new(g1, g2, &[(0, 2), (1, 0)], players).unwrap();
        let parsed = parse_instance(&write_instance(&inst)).unwrap();
        assert_eq!(parsed, inst);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("g2 3\n", 1),                                        // wrong first section
            ("g1 2\n0 0\n", 2),                                   // self loop
            ("g1 2\ng2 1\ngi complete\n0 0\n", 4),                // edges after complete
            ("g1 1\ng2 1\ngi complete\nplayer 0 cost 0 benefits 1\n", 4), // bad cost
            ("g1 1\ng2 1\ngi complete\nplayer 0 cost 1 benefits 1 2\n", 4), // increasing table
            ("g1 1\ng2 1\ngi complete\nplayer 9 cost 1 benefits 1\n", 4), // bad index
        ];
        for (text, expected_line) in cases {
            match parse_instance(text) {
                Err(Error::Parse { line, .. }) => {
                    assert_eq!(line, expected_line, "input: {text:?}")
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn missing_player_rejected() {
        let text = "g1 2\ng2 1\ngi complete\nplayer 0 cost 1 benefits 1\n";
        assert!(parse_instance(text).is_err());
    }

    #[test]
    fn profile_round_trip_and_validation() {
        let mut profile = StrategyProfile::empty(3);
        profile.set_action(0, BTreeSet::from([1, 2]));
        profile.set_action(2, BTreeSet::from([0]));
        let text = write_profile(&profile);
        let parsed = parse_profile(&text, 3, 3).unwrap();
        assert_eq!(parsed, profile);

        assert!(parse_profile(&text, 4, 3).is_err());
        assert!(parse_profile("profile 1\n0 5\n", 1, 3).is_err());
        assert!(parse_profile("", 1, 1).is_err());
    }

    #[test]
    fn dependency_list_parsing() {
        let edges = parse_dependency_list("# deps\n0 1\n2 0\n").unwrap();
        assert_eq!(edges, vec![(0, 1), (2, 0)]);
        assert!(parse_dependency_list("0\n").is_err());
    }
}
