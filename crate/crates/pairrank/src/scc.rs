//! Strong-connectivity test for directed supports.

/// True when every vertex is reachable from vertex 0 and vertex 0 is
/// reachable from every vertex (Kosaraju's criterion for one source).
pub(crate) fn strongly_connected(forward: &[Vec<usize>]) -> bool {
    if forward.is_empty() {
        return false;
    }
    let mut backward = vec![Vec::new(); forward.len()];
    for (i, row) in forward.iter().enumerate() {
        for &j in row {
            backward[j].push(i);
        }
    }
    reaches_all(forward, 0) && reaches_all(&backward, 0)
}

fn reaches_all(adj: &[Vec<usize>], start: usize) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == adj.len()
}
