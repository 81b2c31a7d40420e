use super::laurent::LaurentPoly;

/// Dense scratch vector of polynomials that remembers which slots it touched.
pub(crate) struct Accumulator {
    slots: Vec<LaurentPoly>,
    touched: Vec<u32>,
    mark: Vec<bool>,
}

impl Accumulator {
    pub fn new(n: usize) -> Self {
        Accumulator { slots: vec![LaurentPoly::zero(); n], touched: Vec::new(), mark: vec![false; n] }
    }

    pub fn add(&mut self, i: usize, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i as u32);
        }
        self.slots[i] += p;
    }

    /// Nonzero entries sorted by index; resets the accumulator.
    pub fn take_sparse(&mut self) -> Vec<(u32, LaurentPoly)> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i as usize] = false;
            let p = std::mem::take(&mut self.slots[i as usize]);
            if !p.is_zero() {
                out.push((i, p));
            }
        }
        self.touched.clear();
        out
    }

    pub fn into_sparse(mut self) -> Vec<(u32, LaurentPoly)> {
        self.take_sparse()
    }
}
