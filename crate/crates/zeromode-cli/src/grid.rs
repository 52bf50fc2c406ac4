//! Parameter-grid parsing and generation: `start:stop:count[:geom|lin]`.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Geometric,
}

#[derive(Debug, Clone, Copy)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridRange {
    pub fn new(start: f64, stop: f64, count: usize, spacing: Spacing) -> Result<Self, String> {
        if count < 2 {
            return Err(format!("grid count must be at least 2, got {count}"));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err("grid endpoints must be finite".into());
        }
        if start == stop {
            return Err("grid start and stop must differ".into());
        }
        if spacing == Spacing::Geometric && start * stop <= 0.0 {
            return Err("geometric spacing requires nonzero same-sign endpoints".into());
        }
        Ok(Self {
            start,
            stop,
            count,
            spacing,
        })
    }

    /// Parse `start:stop:count[:geom|lin]`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(format!(
                "expected start:stop:count[:geom|lin], got \"{text}\""
            ));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| format!("bad grid start \"{}\"", parts[0]))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| format!("bad grid stop \"{}\"", parts[1]))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| format!("bad grid count \"{}\"", parts[2]))?;
        let spacing = match parts.get(3).copied() {
            None | Some("lin") | Some("linear") => Spacing::Linear,
            Some("geom") | Some("geometric") => Spacing::Geometric,
            Some(other) => return Err(format!("unknown grid spacing \"{other}\"")),
        };
        Self::new(start, stop, count, spacing)
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.start + t * (self.stop - self.start),
                    Spacing::Geometric => self.start * (self.stop / self.start).powf(t),
                }
            })
            .collect()
    }
}

/// Order-preserving parallel evaluation of `f` over `0..n` with at most
/// `jobs` worker threads; results come back in index order regardless of
/// scheduling, so output files stay deterministic.
pub fn parallel_map<T, F>(n: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let jobs = jobs.max(1).min(n.max(1));
    if jobs <= 1 {
        return (0..n).map(f).collect();
    }
    let chunk = n.div_ceil(jobs);
    let mut out = Vec::with_capacity(n);
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let lo = j * chunk;
                let hi = ((j + 1) * chunk).min(n);
                scope.spawn(move || (lo..hi).map(f).collect::<Vec<T>>())
            })
            .collect();
        for handle in handles {
            out.extend(handle.join().expect("sweep worker panicked"));
        }
    });
    out
}
