use std::time::Instant;
fn main() {
    for (level, bound) in [(45u64, 12u32), (50, 12), (64, 12), (36, 12), (48, 12)] {
        let t = Instant::now();
        let found = convsum_core::search_cusp_quotients(level, bound);
        println!("level {level:2} bound {bound}: {:7} quotients in {:?}", found.len(), t.elapsed());
    }
}
