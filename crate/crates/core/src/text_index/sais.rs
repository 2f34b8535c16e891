//! Suffix sorting by induced sorting (SA-IS), 0-based, for integer strings
//! over `[0, upper]`.

pub(crate) fn suffix_array(s: &[u32], upper: u32) -> Vec<u32> {
    let s: Vec<i32> = s.iter().map(|&c| c as i32).collect();
    sa_is(&s, upper as i32).into_iter().map(|v| v as u32).collect()
}

fn sa_is(s: &[i32], upper: i32) -> Vec<i32> {
    let n = s.len();
    match n {
        0 => return vec![],
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ => {}
    }
    let upper = upper as usize;
    let mut sa = vec![-1i32; n];
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] { ls[i + 1] } else { s[i] < s[i + 1] };
    }
    let mut sum_l = vec![0i32; upper + 2];
    let mut sum_s = vec![0i32; upper + 2];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i] as usize] += 1;
        } else {
            sum_l[s[i] as usize + 1] += 1;
        }
    }
    for i in 0..=upper {
        sum_s[i] += sum_l[i];
        if i < upper {
            sum_l[i + 1] += sum_s[i];
        }
    }

    let induce = |sa: &mut Vec<i32>, lms: &[i32]| {
        sa.fill(-1);
        let mut buf = sum_s.clone();
        for &d in lms {
            let d = d as usize;
            if d == n {
                continue;
            }
            let c = s[d] as usize;
            sa[buf[c] as usize] = d as i32;
            buf[c] += 1;
        }
        let mut buf = sum_l.clone();
        let c = s[n - 1] as usize;
        sa[buf[c] as usize] = n as i32 - 1;
        buf[c] += 1;
        for i in 0..n {
            let v = sa[i];
            if v >= 1 && !ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize;
                sa[buf[c] as usize] = v - 1;
                buf[c] += 1;
            }
        }
        let mut buf = sum_l.clone();
        for i in (0..n).rev() {
            let v = sa[i];
            if v >= 1 && ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize + 1;
                buf[c] -= 1;
                sa[buf[c] as usize] = v - 1;
            }
        }
    };

    let mut lms_map = vec![-1i32; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len() as i32;
            lms.push(i as i32);
        }
    }
    let m = lms.len();
    induce(&mut sa, &lms);

    if m > 0 {
        let mut sorted_lms: Vec<i32> = sa.iter().copied().filter(|&v| lms_map[v as usize] != -1).collect();
        let mut rec_s = vec![0i32; m];
        let mut rec_upper = 0;
        rec_s[lms_map[sorted_lms[0] as usize] as usize] = 0;
        for i in 1..m {
            let (mut l, mut r) = (sorted_lms[i - 1] as usize, sorted_lms[i] as usize);
            let end_l = if (lms_map[l] as usize) + 1 < m { lms[lms_map[l] as usize + 1] as usize } else { n };
            let end_r = if (lms_map[r] as usize) + 1 < m { lms[lms_map[r] as usize + 1] as usize } else { n };
            let mut same = true;
            if end_l - l != end_r - r {
                same = false;
            } else {
                while l < end_l {
                    if s[l] != s[r] {
                        break;
                    }
                    l += 1;
                    r += 1;
                }
                if l == n || r == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[i] as usize] as usize] = rec_upper;
        }
        let rec_sa = sa_is(&rec_s, rec_upper);
        for i in 0..m {
            sorted_lms[i] = lms[rec_sa[i] as usize];
        }
        induce(&mut sa, &sorted_lms);
    }
    sa
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(s: &[u32]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..s.len() as u32).collect();
        sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        sa
    }

    #[test]
    fn matches_naive_sort() {
        let mut x = 12345u64;
        for n in 0..300 {
            for sigma in [1u32, 2, 3, 7] {
                let s: Vec<u32> = (0..n)
                    .map(|_| {
                        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((x >> 33) % sigma as u64) as u32
                    })
                    .collect();
                assert_eq!(suffix_array(&s, sigma), naive(&s), "{s:?}");
            }
        }
    }
}
