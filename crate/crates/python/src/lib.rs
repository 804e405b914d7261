//! Python bindings: `import hierhuff_py`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict};

use hierhuff::{bench, CompressOptions, MiningParams};

create_exception!(hierhuff_py, HierhuffError, PyValueError);

fn err(e: hierhuff::Error) -> PyErr {
    HierhuffError::new_err(e.to_string())
}

/// Pattern dictionary; immutable once built.
#[pyclass(name = "Dictionary", module = "hierhuff_py", frozen)]
pub struct Dictionary {
    inner: hierhuff::Dictionary,
}

#[pymethods]
impl Dictionary {
    /// Build from patterns in rank order. Ineligible patterns are dropped;
    /// see `dropped`.
    #[new]
    #[pyo3(signature = (patterns = Vec::new()))]
    fn new(patterns: Vec<Vec<u8>>) -> Self {
        Dictionary { inner: hierhuff::Dictionary::build(&patterns).dictionary }
    }

    /// Build and also return how many patterns were dropped.
    #[staticmethod]
    fn build(patterns: Vec<Vec<u8>>) -> (Self, usize) {
        let built = hierhuff::Dictionary::build(&patterns);
        (Dictionary { inner: built.dictionary }, built.dropped)
    }

    #[staticmethod]
    fn parse(blob: &[u8]) -> PyResult<Self> {
        hierhuff::Dictionary::parse(blob).map(|inner| Dictionary { inner }).map_err(err)
    }

    fn serialize<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &self.inner.serialize())
    }

    #[getter]
    fn digest(&self) -> u64 {
        self.inner.digest()
    }

    fn patterns<'py>(&self, py: Python<'py>) -> Vec<Bound<'py, PyBytes>> {
        self.inner.patterns().iter().map(|p| PyBytes::new(py, p)).collect()
    }

    fn rank_of(&self, pattern: &[u8]) -> Option<usize> {
        self.inner.rank_of(pattern)
    }

    fn replacement<'py>(&self, py: Python<'py>, rank: usize) -> PyResult<Bound<'py, PyBytes>> {
        let r = self.inner.replacement_for(rank).map_err(err)?;
        Ok(PyBytes::new(py, r.as_bytes()))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Dictionary(entries={}, digest={:016x})", self.inner.len(), self.inner.digest())
    }
}

#[pyclass(name = "BenchRecord", module = "hierhuff_py", frozen, get_all)]
pub struct BenchRecord {
    input_size: u64,
    hh_size: u64,
    ch_size: u64,
    dict_size: u64,
    perf_hh: f64,
    perf_ch: f64,
    compression_ratio: f64,
    critical_point: Option<u64>,
}

impl From<bench::BenchRecord> for BenchRecord {
    fn from(r: bench::BenchRecord) -> Self {
        BenchRecord {
            input_size: r.input_size,
            hh_size: r.hh_size,
            ch_size: r.ch_size,
            dict_size: r.dict_size,
            perf_hh: r.perf_hh,
            perf_ch: r.perf_ch,
            compression_ratio: r.compression_ratio,
            critical_point: r.critical_point,
        }
    }
}

#[pymethods]
impl BenchRecord {
    fn __repr__(&self) -> String {
        format!(
            "BenchRecord(input_size={}, hh_size={}, ch_size={}, dict_size={}, ratio={:.6})",
            self.input_size, self.hh_size, self.ch_size, self.dict_size, self.compression_ratio
        )
    }
}

/// Mine a dictionary from corpus texts; keywords are always included.
#[pyfunction]
#[pyo3(signature = (corpus, keywords = Vec::new(), min_len = 3, min_freq = 10, max_entries = hierhuff::dictionary::MAX_ENTRIES))]
fn mine(
    corpus: Vec<Vec<u8>>,
    keywords: Vec<Vec<u8>>,
    min_len: usize,
    min_freq: u64,
    max_entries: usize,
) -> PyResult<Dictionary> {
    let params = MiningParams::new(min_len, min_freq, max_entries).map_err(err)?;
    let ranked = hierhuff::mine(&corpus, &keywords, &params).map_err(err)?;
    Ok(Dictionary { inner: hierhuff::Dictionary::from_ranked(&ranked).dictionary })
}

#[pyfunction]
#[pyo3(signature = (text, dictionary = None, embed = false, huffman_only = false))]
fn compress<'py>(
    py: Python<'py>,
    text: &[u8],
    dictionary: Option<&Dictionary>,
    embed: bool,
    huffman_only: bool,
) -> Bound<'py, PyBytes> {
    let empty;
    let dict = match dictionary {
        Some(d) => &d.inner,
        None => {
            empty = hierhuff::Dictionary::empty();
            &empty
        }
    };
    PyBytes::new(py, &hierhuff::compress(text, dict, CompressOptions { embed, huffman_only }))
}

#[pyfunction]
#[pyo3(signature = (data, dictionary = None))]
fn decompress<'py>(py: Python<'py>, data: &[u8], dictionary: Option<&Dictionary>) -> PyResult<Bound<'py, PyBytes>> {
    let text = hierhuff::decompress_with(data, dictionary.map(|d| &d.inner)).map_err(err)?;
    Ok(PyBytes::new(py, &text))
}

/// Container header fields as a dict.
#[pyfunction]
fn inspect<'py>(py: Python<'py>, data: &[u8]) -> PyResult<Bound<'py, PyDict>> {
    let info = hierhuff::inspect(data).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("version", info.version)?;
    d.set_item("embedded", info.embedded())?;
    d.set_item("huffman_only", info.huffman_only())?;
    d.set_item("dict_digest", info.dict_digest)?;
    d.set_item("embedded_dict_len", info.embedded_dict_len)?;
    d.set_item("table_len", info.table_len)?;
    d.set_item("code_symbols", info.code_symbols)?;
    d.set_item("symbol_count", info.symbol_count)?;
    d.set_item("payload_len", info.payload_len)?;
    d.set_item("total_len", info.total_len)?;
    Ok(d)
}

#[pyfunction]
fn encode_level1<'py>(py: Python<'py>, text: &[u8], dictionary: &Dictionary) -> Bound<'py, PyBytes> {
    PyBytes::new(py, &hierhuff::encode_level1(text, &dictionary.inner))
}

#[pyfunction]
fn decode_level1<'py>(py: Python<'py>, data: &[u8], dictionary: &Dictionary) -> PyResult<Bound<'py, PyBytes>> {
    let text = hierhuff::decode_level1(data, &dictionary.inner).map_err(err)?;
    Ok(PyBytes::new(py, &text))
}

#[pyfunction]
fn measure(text: &[u8], dictionary: &Dictionary) -> PyResult<BenchRecord> {
    bench::measure(text, &dictionary.inner).map(Into::into).map_err(err)
}

#[pyfunction]
fn critical_point(dict_size: u64, hh_size: u64, ch_size: u64) -> Option<u64> {
    bench::critical_point(dict_size, hh_size, ch_size)
}

/// Synthetic corpus; defaults to the built-in CS vocabulary.
#[pyfunction]
#[pyo3(signature = (size, seed = 1, keywords = None, zipf_s = 1.0, keyword_density = 0.3))]
fn gen_synthetic<'py>(
    py: Python<'py>,
    size: usize,
    seed: u64,
    keywords: Option<Vec<Vec<u8>>>,
    zipf_s: f64,
    keyword_density: f64,
) -> PyResult<Bound<'py, PyBytes>> {
    let mut params = bench::SynthParams::cs_default(size, seed);
    if let Some(k) = keywords {
        params.keywords = k;
    }
    params.zipf_s = zipf_s;
    params.keyword_density = keyword_density;
    let text = bench::gen_synthetic(&params).map_err(err)?;
    Ok(PyBytes::new(py, &text))
}

#[pymodule]
fn hierhuff_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HierhuffError", m.py().get_type::<HierhuffError>())?;
    m.add_class::<Dictionary>()?;
    m.add_class::<BenchRecord>()?;
    m.add_function(wrap_pyfunction!(mine, m)?)?;
    m.add_function(wrap_pyfunction!(compress, m)?)?;
    m.add_function(wrap_pyfunction!(decompress, m)?)?;
    m.add_function(wrap_pyfunction!(inspect, m)?)?;
    m.add_function(wrap_pyfunction!(encode_level1, m)?)?;
    m.add_function(wrap_pyfunction!(decode_level1, m)?)?;
    m.add_function(wrap_pyfunction!(measure, m)?)?;
    m.add_function(wrap_pyfunction!(critical_point, m)?)?;
    m.add_function(wrap_pyfunction!(gen_synthetic, m)?)?;
    Ok(())
}
