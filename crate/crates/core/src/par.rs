//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper takes a runtime `parallel` switch so benchmarks can compare
//! both paths in one build; without the `parallel` feature the switch is
//! ignored and everything runs on the calling thread. Results never depend
//! on the path taken.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether parallel execution is compiled in.
pub const ENABLED: bool = cfg!(feature = "parallel");

/// Number of worker threads the parallel path would use.
pub fn threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

pub fn map_range<R, F>(n: usize, parallel: bool, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && n > 1 {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Calls `f(index, chunk)` for consecutive chunks of length `width`.
pub fn for_each_chunk_mut<T, F>(data: &mut [T], width: usize, parallel: bool, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if width == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if parallel && data.len() > width {
        data.par_chunks_mut(width).enumerate().for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = parallel;
    data.chunks_mut(width).enumerate().for_each(|(i, c)| f(i, c));
}

/// Like [`for_each_chunk_mut`] but over groups of `group` chunks, so that a
/// worker handles several rows at once.
pub fn for_each_group_mut<T, F>(data: &mut [T], width: usize, group: usize, parallel: bool, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    for_each_chunk_mut(data, width * group.max(1), parallel, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_agree() {
        let v: Vec<u64> = (0..1000).collect();
        assert_eq!(map(&v, true, |x| x * x), map(&v, false, |x| x * x));
        assert_eq!(map_range(17, true, |i| i + 1), (1..18).collect::<Vec<_>>());
        let mut a = vec![0usize; 12];
        let mut b = a.clone();
        for_each_chunk_mut(&mut a, 3, true, |i, c| c.iter_mut().for_each(|x| *x = i));
        for_each_chunk_mut(&mut b, 3, false, |i, c| c.iter_mut().for_each(|x| *x = i));
        assert_eq!(a, b);
        assert_eq!(a[11], 3);
    }
}
