use alloc::string::String;

/// A spin-z basis state; bit `i` set means site `i` points up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisState(pub u32);

impl BasisState {
    pub fn is_up(self, site: usize) -> bool {
        self.0 >> site & 1 == 1
    }

    pub fn ups(self) -> u32 {
        self.0.count_ones()
    }

    /// Twice the `m_tot` on `mu` sites: `ups - downs`.
    pub fn twice_m(self, mu: u32) -> i64 {
        2 * i64::from(self.ups()) - i64::from(mu)
    }

    /// Up spins among sites `range.start..range.end`.
    pub fn ups_in(self, start: usize, end: usize) -> u32 {
        let width = end - start;
        if width == 0 {
            return 0;
        }
        let mask = if width >= 32 { u32::MAX } else { (1u32 << width) - 1 };
        (self.0 >> start & mask).count_ones()
    }

    /// `'1'` for up, `'0'` for down, site 0 first.
    pub fn bitstring(self, mu: u32) -> String {
        (0..mu as usize).map(|i| if self.is_up(i) { '1' } else { '0' }).collect()
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}
