use std::fs;
use std::path::Path;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// `N` equal-length files, each split into `F` subfiles.
///
/// Files are zero-padded to a common length that is a multiple of `F`; the
/// original lengths are kept so decoded files can be compared exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileLibrary {
    files: Vec<Vec<u8>>,
    lengths: Vec<usize>,
    subpacketization: usize,
    subfile_len: usize,
}

impl FileLibrary {
    pub fn new(files: Vec<Vec<u8>>, subpacketization: usize) -> Result<Self> {
        if files.is_empty() {
            return Err(Error::ParameterOutOfRange(
                "library needs at least one file".into(),
            ));
        }
        if subpacketization == 0 {
            return Err(Error::ParameterOutOfRange(
                "subpacketization must be positive".into(),
            ));
        }
        let lengths: Vec<usize> = files.iter().map(Vec::len).collect();
        let longest = lengths.iter().copied().max().unwrap_or(0).max(1);
        let subfile_len = longest.div_ceil(subpacketization);
        let padded = subfile_len * subpacketization;
        let files = files
            .into_iter()
            .map(|mut f| {
                f.resize(padded, 0);
                f
            })
            .collect();
        Ok(Self {
            files,
            lengths,
            subpacketization,
            subfile_len,
        })
    }

    /// `n` pseudo-random files of `bytes` bytes each, reproducible from `seed`.
    pub fn synthetic(n: usize, bytes: usize, seed: u64, subpacketization: usize) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let files = (0..n)
            .map(|_| {
                let mut f = vec![0u8; bytes];
                rng.fill_bytes(&mut f);
                f
            })
            .collect();
        Self::new(files, subpacketization)
    }

    /// Every regular file in `dir`, in file-name order.
    pub fn from_dir(dir: &Path, subpacketization: usize) -> Result<Self> {
        let mut paths: Vec<_> = fs::read_dir(dir)?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        paths.retain(|p| p.is_file());
        paths.sort();
        let files = paths
            .iter()
            .map(fs::read)
            .collect::<std::io::Result<Vec<_>>>()?;
        Self::new(files, subpacketization)
    }

    /// N.
    pub fn len(&self) -> usize {
        self.files.len()
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    /// F.
    pub fn subpacketization(&self) -> usize {
        self.subpacketization
    }

    pub fn subfile_len(&self) -> usize {
        self.subfile_len
    }

    /// Padded length B.
    pub fn file_len(&self) -> usize {
        self.subfile_len * self.subpacketization
    }

    pub fn subfile(&self, file: usize, row: usize) -> &[u8] {
        let start = row * self.subfile_len;
        &self.files[file][start..start + self.subfile_len]
    }

    /// The file as ingested, without padding.
    pub fn original(&self, file: usize) -> &[u8] {
        &self.files[file][..self.lengths[file]]
    }

    pub fn original_len(&self, file: usize) -> usize {
        self.lengths[file]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padding_and_slices() {
        let lib = FileLibrary::new(vec![vec![1, 2, 3, 4, 5], vec![9; 2]], 3).unwrap();
        assert_eq!(lib.file_len(), 6);
        assert_eq!(lib.subfile(0, 1), &[3, 4]);
        assert_eq!(lib.subfile(0, 2), &[5, 0]);
        assert_eq!(lib.original(1), &[9, 9]);
        assert_eq!(lib.original_len(0), 5);
    }

    #[test]
    fn synthetic_is_reproducible() {
        let a = FileLibrary::synthetic(3, 12, 42, 4).unwrap();
        let b = FileLibrary::synthetic(3, 12, 42, 4).unwrap();
        let c = FileLibrary::synthetic(3, 12, 43, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn directory_ingest() {
        let dir = std::env::temp_dir().join(format!("sppda-lib-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("b"), b"world!").unwrap();
        fs::write(dir.join("a"), b"hi").unwrap();
        let lib = FileLibrary::from_dir(&dir, 2).unwrap();
        assert_eq!(lib.original(0), b"hi");
        assert_eq!(lib.original(1), b"world!");
        fs::remove_dir_all(&dir).unwrap();
    }
}
