//! Image files by extension: PNG through the `png` codec, PPM otherwise.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use slcs::image::{read_ppm, write_ppm};
use slcs::{Error, RasterImage, Result};

fn is_png(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("png"))
}

pub fn load(path: &Path) -> Result<RasterImage> {
    if is_png(path) {
        load_png(path)
    } else {
        read_ppm(&std::fs::read(path)?)
    }
}

pub fn save(path: &Path, img: &RasterImage) -> Result<()> {
    if is_png(path) {
        save_png(path, img)
    } else {
        Ok(std::fs::write(path, write_ppm(img))?)
    }
}

fn png_err(e: impl std::fmt::Display) -> Error {
    Error::Image(format!("png: {e}"))
}

fn load_png(path: &Path) -> Result<RasterImage> {
    let mut decoder = png::Decoder::new(File::open(path)?);
    // palette and low bit depths to 8-bit, 16-bit down to 8-bit
    decoder.set_transformations(png::Transformations::normalize_to_color8());
    let mut reader = decoder.read_info().map_err(png_err)?;
    let mut buf = vec![0; reader.output_buffer_size()];
    let info = reader.next_frame(&mut buf).map_err(png_err)?;
    let bytes = &buf[..info.buffer_size()];
    let pixels: Vec<[u8; 3]> = match info.color_type {
        png::ColorType::Rgb => bytes.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect(),
        png::ColorType::Rgba => bytes.chunks_exact(4).map(|c| [c[0], c[1], c[2]]).collect(),
        png::ColorType::Grayscale => bytes.iter().map(|&v| [v, v, v]).collect(),
        png::ColorType::GrayscaleAlpha => bytes.chunks_exact(2).map(|c| [c[0], c[0], c[0]]).collect(),
        png::ColorType::Indexed => return Err(png_err("palette was not expanded")),
    };
    RasterImage::new(info.width as usize, info.height as usize, pixels)
}

fn save_png(path: &Path, img: &RasterImage) -> Result<()> {
    let w = BufWriter::new(File::create(path)?);
    let mut encoder = png::Encoder::new(w, img.width() as u32, img.height() as u32);
    encoder.set_color(png::ColorType::Rgb);
    encoder.set_depth(png::BitDepth::Eight);
    let mut writer = encoder.write_header().map_err(png_err)?;
    writer.write_image_data(img.pixels().as_flattened()).map_err(png_err)?;
    writer.finish().map_err(png_err)
}
