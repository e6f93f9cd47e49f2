use std::str::FromStr;

/// `start:stop:count`, both ends included.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl Grid {
    pub fn linspace(start: f64, stop: f64, count: usize) -> Self {
        if count == 1 {
            return Grid(vec![start]);
        }
        let step = (stop - start) / (count - 1) as f64;
        Grid((0..count).map(|i| if i == count - 1 { stop } else { start + step * i as f64 }).collect())
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(format!("grid must look like start:stop:count, got {s:?}"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("bad grid bound {x:?}: {e}"));
        let (start, stop) = (num(start)?, num(stop)?);
        if !start.is_finite() || !stop.is_finite() {
            return Err(format!("grid bounds must be finite, got {s:?}"));
        }
        let count: usize = count.trim().parse().map_err(|e| format!("bad grid count {count:?}: {e}"))?;
        if count == 0 {
            return Err("grid count must be at least 1".into());
        }
        if count == 1 && start != stop {
            return Err(format!("a one-point grid needs start == stop, got {s:?}"));
        }
        Ok(Grid::linspace(start, stop, count))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_endpoints() {
        let g: Grid = "0:1:5".parse().unwrap();
        assert_eq!(g.0, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g: Grid = "-0.25:-0.0833:25".parse().unwrap();
        assert_eq!(g.0.len(), 25);
        assert_eq!((g.0[0], g.0[24]), (-0.25, -0.0833));
        assert_eq!("0.3:0.3:1".parse::<Grid>().unwrap().0, vec![0.3]);
    }

    #[test]
    fn malformed_grids() {
        for bad in ["", "0:1", "0:1:2:3", "a:1:3", "0:1:0", "0:1:-2", "0:1:1", "0:inf:3"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }
}
