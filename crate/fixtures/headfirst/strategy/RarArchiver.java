package headfirst.strategy;

public class RarArchiver extends Archiver {
    public RarArchiver() {
        compressor = new RarCompressor();
    }
}
