/// All sequences of `len` distinct elements of `0..n`, in lexicographic order.
pub fn arrangements(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len > n {
        return out;
    }
    let mut current = Vec::with_capacity(len);
    let mut used = vec![false; n];
    fill(n, len, &mut current, &mut used, &mut out);
    out
}

fn fill(n: usize, len: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if current.len() == len {
        out.push(current.clone());
        return;
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            current.push(v);
            fill(n, len, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        assert_eq!(arrangements(4, 2).len(), 12);
        assert_eq!(arrangements(3, 3)[1], vec![0, 2, 1]);
        assert_eq!(arrangements(3, 0), vec![Vec::<usize>::new()]);
        assert!(arrangements(2, 3).is_empty());
    }
}
