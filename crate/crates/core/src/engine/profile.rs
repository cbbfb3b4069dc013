//! Per-level work census collected while the engine runs.

/// Counters for all nodes at one recursion depth.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub level: usize,
    pub n1: usize,
    pub n2: Option<usize>,
    pub w: usize,
    /// `|W^{n-n1}_w|` for nodes at this level.
    pub outer_points: usize,
    /// Scoreboard entries (recursive nodes) or evaluation points (brute force) per node.
    pub domain_points: usize,
    /// `|W^{n-n2}_{w'}|`, the interpolation set of the next level.
    pub interpolation_points: usize,
    pub nodes: u64,
    pub brute_force_nodes: u64,
    pub trials: u64,
    /// Word-level operations spent in Möbius transforms.
    pub transform_work: u64,
}

/// Work census of one engine call, indexed by level.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    pub levels: Vec<LevelStats>,
}

impl Census {
    pub(crate) fn level_mut(&mut self, level: usize) -> &mut LevelStats {
        while self.levels.len() <= level {
            let l = self.levels.len();
            self.levels.push(LevelStats {
                level: l,
                ..Default::default()
            });
        }
        &mut self.levels[level]
    }

    /// Sums counters level-wise. Shapes are identical for nodes at the same
    /// depth, so the descriptive fields are simply carried over.
    pub fn merge(&mut self, other: &Census) {
        for o in &other.levels {
            let l = self.level_mut(o.level);
            if l.nodes == 0 {
                l.n1 = o.n1;
                l.n2 = o.n2;
                l.w = o.w;
                l.outer_points = o.outer_points;
                l.domain_points = o.domain_points;
                l.interpolation_points = o.interpolation_points;
            }
            l.nodes += o.nodes;
            l.brute_force_nodes += o.brute_force_nodes;
            l.trials += o.trials;
            l.transform_work += o.transform_work;
        }
    }

    pub fn total_nodes(&self) -> u64 {
        self.levels.iter().map(|l| l.nodes).sum()
    }

    pub fn total_transform_work(&self) -> u64 {
        self.levels.iter().map(|l| l.transform_work).sum()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}
