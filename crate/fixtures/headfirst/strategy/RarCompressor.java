package headfirst.strategy;

public class RarCompressor implements Compressor {
    @Override
    public byte[] compress(byte[] data) {
        byte[] out = new byte[data.length];
        for (int i = 0; i < data.length; i++) {
            out[i] = data[data.length - 1 - i];
        }
        return out;
    }

    @Override
    public String extension() {
        return "rar";
    }
}
