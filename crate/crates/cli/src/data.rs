//! Data-directory lookup and file digests.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Environment variable that overrides the shipped data directory.
pub const DATA_DIR_VAR: &str = "NSM_DATA_DIR";

/// SHA-256 digests of the shipped data files, keyed by path under the data directory.
pub const PINNED_DIGESTS: &[(&str, &str)] = &[
    (
        "ansatze/ar38_0p_gc.ansatz",
        "f759ba7e1fc1dd9c038f589ed0ea9e04613fc4e97aaf630f59a1fc825c295f8c",
    ),
    (
        "ansatze/ar38_0p_jw.ansatz",
        "13b1eb7ebaa03903bebed708a98fbe2ee6d3076a6aa3c19a82c7dafc1dd2500e",
    ),
    (
        "ansatze/ar38_1p_gc.ansatz",
        "cb3890692843af4472b70a4d5012494778596fdbedbd6b43d1631045c696ed06",
    ),
    (
        "ansatze/ar38_1p_jw.ansatz",
        "c6c6e3546f862c2fa32fbb3f535f9f874bf1854e3e5d0f1bd4c2ca2db1a50adf",
    ),
    (
        "ansatze/ar38_2p_gc.ansatz",
        "3200a9f6870e3aa2745e83e6d8e9537c9dfe762525c7c357ae085a4490681ac9",
    ),
    (
        "ansatze/ar38_2p_jw.ansatz",
        "72b764afce3a5079866cd552461f35f9cd30108be1b565763646e03e498c1f49",
    ),
    (
        "ansatze/li6_0p_gc.ansatz",
        "1fdbefca8b37b89c978a03593110b2ef19ea77f3c45a0b709d1508902cb92c30",
    ),
    (
        "ansatze/li6_1p_gc.ansatz",
        "268ef4d82fd200fba84df38c95b91ed21675c8552107de9cc8618f36fc375f75",
    ),
    (
        "ansatze/li6_2p_gc.ansatz",
        "866097ba3e6e09b460ea146ee4b268c77877a3e3f9ff771e35788a3ea08c3d1c",
    ),
    (
        "ansatze/li6_3p_gc.ansatz",
        "0230360cdcfdcd9a91f2aa766d535f05a99a90a22dbcbd342706432081e66d78",
    ),
    (
        "hamiltonians/ar38_0p_gc.pauli",
        "b8413ec5c87d4b21b714add7f75297a4bb4e789adbfcbcb1ec521050b4389d26",
    ),
    (
        "hamiltonians/ar38_0p_jw.pauli",
        "5c7533d26cd18eff7c84e8bf39c4dc7c500c7ff141d689d346d08efe6a9f305d",
    ),
    (
        "hamiltonians/ar38_1p_gc.pauli",
        "a2fc48bf023edccd2f96c15a907caf7b4d6142914d9f35e354698e1abd503555",
    ),
    (
        "hamiltonians/ar38_1p_jw.pauli",
        "6a9e6d7a0b39889f1ba00c628ac52cc35df13374fe08cc531789575b351ff818",
    ),
    (
        "hamiltonians/ar38_2p_gc.pauli",
        "b31a2eaf5d6167a8abff701f2fd74d484f5a82239f2b9672d2515af4c5c826d2",
    ),
    (
        "hamiltonians/ar38_2p_jw.pauli",
        "ebce364985ec641cc3831f0166053087d625af598b622327f3dec52ff99f835b",
    ),
    (
        "hamiltonians/li6_0p_gc.pauli",
        "1d34464a882dd3ddfa994a641e0ae9f9aa7f455341313c3953e5e48932383ed0",
    ),
    (
        "hamiltonians/li6_1p_gc.pauli",
        "5e1390881e7294d087e11c66b9313d6e1f23729ce635e498093559deef8d92c0",
    ),
    (
        "hamiltonians/li6_2p_gc.pauli",
        "11da05e0d57f6d598871f456b444a03ec4b22f96ea796f6fedb4b5f8bb1ef0cd",
    ),
    (
        "hamiltonians/li6_3p_gc.pauli",
        "e4e9f8128e98805ed99f96932d3231db5e8450c05ddaff861baebebce96a9bdd",
    ),
    (
        "interactions/synthetic_p.int",
        "3118eece75b0f2ce0368299ee4eb442e02b0a039ea665272b2a6046fd1ce8fa0",
    ),
    (
        "interactions/synthetic_sd.int",
        "739d034ae348d16dc44a7b769ce62f6800f131f38bc11969b4902e31ff5fc566",
    ),
    (
        "mappings/ar38_0p.map",
        "054c2ff63af26d720a49a003987f14bf9181b5c179e5eef3beaf1e37dd1b653d",
    ),
    (
        "mappings/ar38_1p.map",
        "5e7cd1051cfcf5afbd12789173292621e4ee104ce076f58619de8f8aa1c9dde6",
    ),
    (
        "mappings/ar38_2p.map",
        "ff4c74141690f47330c5644ebdb35de757d6974ae28bf9f32a17fb370972bcce",
    ),
    (
        "mappings/li6_0p.map",
        "0c72428d440392f0506d13a8a3f59cb42f42ae3925e9df5763cfec8d8d318bb9",
    ),
    (
        "mappings/li6_1p.map",
        "c663e04507a4c8a9155691b98457a6816d7d856511ac9e095b34c0032e280bc3",
    ),
    (
        "mappings/li6_2p.map",
        "2be77bd54203e31fd96e5360479933005632d3ef029050137bcb003b79ebda37",
    ),
    (
        "mappings/li6_3p.map",
        "ebb29d40b540050d9a05e7ecdc1d01254775ebc9bd5dc9c2a9b29c7360989e9b",
    ),
    (
        "model_spaces/ar38_sd.space",
        "1778182744b540cfb062bba091df2442033b1294e25831e1ffd0e0a01c27f5d4",
    ),
    (
        "model_spaces/li6_p.space",
        "adc66ee06c89fe739436e3a62c39f826baa5dbdf04d176104e9c69bdbe5ad58f",
    ),
];

/// `$NSM_DATA_DIR` if set, otherwise the workspace `data/` directory.
pub fn data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

/// `path` itself when it exists or is absolute, otherwise the same relative
/// path under the data directory.
pub fn resolve(path: &Path) -> PathBuf {
    if path.is_absolute() || path.exists() {
        return path.to_path_buf();
    }
    let under = data_dir().join(path);
    if under.exists() {
        under
    } else {
        path.to_path_buf()
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::at(path, e))
}

/// Hex SHA-256 of a file's bytes.
pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| CliError::at(path, e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Pinned digest for a path relative to the data directory.
pub fn pinned_digest(relative: &str) -> Option<&'static str> {
    PINNED_DIGESTS
        .iter()
        .find(|(p, _)| *p == relative)
        .map(|(_, d)| *d)
}

/// Digest of `path`, warning when a shipped file no longer matches its pin.
pub fn checked_digest(given: &Path, resolved: &Path) -> Result<String> {
    let digest = sha256_file(resolved)?;
    let relative = resolved.strip_prefix(data_dir()).unwrap_or(given);
    if let Some(pin) = relative.to_str().and_then(pinned_digest) {
        if pin != digest {
            log::warn!(
                "{} differs from the shipped file (sha256 {digest})",
                resolved.display()
            );
        }
    }
    Ok(digest)
}
