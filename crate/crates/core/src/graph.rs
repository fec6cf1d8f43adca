//! Reachability and strongly connected components on adjacency lists.

use std::collections::VecDeque;

/// Nodes reachable from `roots`, with the BFS parent of each discovered node.
pub fn bfs(succ: &[Vec<usize>], roots: &[usize]) -> Vec<Option<usize>> {
    let mut parent = vec![None; succ.len()];
    let mut seen = vec![false; succ.len()];
    let mut queue = VecDeque::new();
    for &r in roots {
        if !seen[r] {
            seen[r] = true;
            parent[r] = Some(r);
            queue.push_back(r);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in &succ[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    parent
}

pub fn reachable(succ: &[Vec<usize>], roots: &[usize]) -> Vec<bool> {
    bfs(succ, roots).into_iter().map(|p| p.is_some()).collect()
}

/// Path from a root to `target` following BFS parents (inclusive on both ends).
pub fn path_to(parent: &[Option<usize>], target: usize) -> Vec<usize> {
    let mut path = vec![target];
    let mut cur = target;
    while let Some(p) = parent[cur] {
        if p == cur {
            break;
        }
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

/// Strongly connected components (Tarjan, iterative); `comp[v]` is the component id.
pub fn scc(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 < succ[v].len() {
                let w = succ[v][top.1];
                top.1 += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Whether each node lies on some cycle (including self-loops).
pub fn on_cycle(succ: &[Vec<usize>]) -> Vec<bool> {
    let comp = scc(succ);
    let mut size = vec![0usize; succ.len()];
    for &c in &comp {
        size[c] += 1;
    }
    (0..succ.len())
        .map(|v| size[comp[v]] > 1 || succ[v].contains(&v))
        .collect()
}

/// Shortest cycle through `v`, as the node sequence starting at `v`, if any.
pub fn cycle_through(succ: &[Vec<usize>], v: usize) -> Option<Vec<usize>> {
    if succ[v].contains(&v) {
        return Some(vec![v]);
    }
    let parent = bfs(succ, &succ[v]);
    parent[v]?;
    let mut path = path_to(&parent, v);
    path.pop();
    path.insert(0, v);
    Some(path)
}
