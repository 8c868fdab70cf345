package headfirst.strategy;

public class ZipArchiver extends Archiver {
    public ZipArchiver() {
        compressor = new ZipCompressor();
    }
}
