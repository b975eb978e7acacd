use std::collections::HashMap;

use super::{
    all_distinct, check_demands, check_library, xor_into, FileLibrary, SimReport, Transmission,
};
use crate::binom::ratio;
use crate::error::{Error, Result};
use crate::pda::{Entry, PdaArray};

/// Dedicated-cache scheme: user `k` stores every subfile at the star rows of
/// column `k`, and each code is one XOR broadcast.
pub fn dedicated_run(
    pda: &PdaArray,
    library: &FileLibrary,
    demands: &[usize],
) -> Result<SimReport> {
    let grid = pda.grid();
    let (f, k) = (grid.rows(), grid.cols());
    check_library(f, library)?;
    check_demands(k, demands, library.len())?;

    let caches: Vec<HashMap<(usize, usize), Vec<u8>>> = (0..k)
        .map(|user| {
            let mut cache = HashMap::new();
            for j in (0..f).filter(|&j| grid.get(j, user).is_star()) {
                for n in 0..library.len() {
                    cache.insert((n, j), library.subfile(n, j).to_vec());
                }
            }
            cache
        })
        .collect();

    let mut cells: Vec<Vec<(usize, usize)>> = vec![Vec::new(); pda.s()];
    for j in 0..f {
        for user in 0..k {
            if let Entry::Code(s) = grid.get(j, user) {
                cells[s as usize - 1].push((user, j));
            }
        }
    }
    let transmissions: Vec<Transmission> = cells
        .into_iter()
        .enumerate()
        .map(|(i, components)| {
            let mut payload = vec![0u8; library.subfile_len()];
            for &(user, j) in &components {
                xor_into(&mut payload, library.subfile(demands[user], j));
            }
            Transmission {
                code: i as u32 + 1,
                payload,
                components,
            }
        })
        .collect();

    let mut decoded = Vec::with_capacity(k);
    for user in 0..k {
        let want = demands[user];
        let mut file = Vec::with_capacity(library.file_len());
        for j in 0..f {
            match grid.get(j, user) {
                Entry::Star => file.extend_from_slice(&caches[user][&(want, j)]),
                Entry::Code(s) => {
                    let t = &transmissions[s as usize - 1];
                    let mut piece = t.payload.clone();
                    for &(other, row) in t.components.iter().filter(|c| c.0 != user) {
                        let held = caches[user].get(&(demands[other], row)).ok_or(
                            Error::MissingComponent {
                                user,
                                code: s,
                                file: demands[other],
                                row,
                            },
                        )?;
                        xor_into(&mut piece, held);
                    }
                    file.extend_from_slice(&piece);
                }
            }
        }
        file.truncate(library.original_len(want));
        decoded.push(file == library.original(want));
    }

    let cache_bytes = caches
        .iter()
        .map(|c| c.values().map(Vec::len).sum())
        .collect();
    Ok(SimReport {
        users: k,
        subpacketization: f,
        rate: ratio(transmissions.len() as u128, f as u128),
        transmissions,
        mh_ratio: ratio(0, 1),
        mp_ratio: ratio(pda.z() as u128, f as u128),
        decoded,
        distinct_demands: all_distinct(demands),
        helper_bytes: Vec::new(),
        private_bytes: cache_bytes,
        subfile_len: library.subfile_len(),
    })
}
